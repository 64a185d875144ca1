#include "dgl/forms.hpp"

#include "dgl/linalg.hpp"

#include <bit>
#include <sstream>

namespace dgl {

int monomial_degree(const Monomial& a)
{
    int d = 0;
    for (auto x : a) d += x;
    return d;
}

Integer monomial_factorial(const Monomial& a)
{
    Integer f = 1;
    for (auto x : a) {
        Integer g;
        mpz_fac_ui(g.get_mpz_t(), x);
        f *= g;
    }
    return f;
}

int mask_size(unsigned mask) { return std::popcount(mask); }

int wedge_letter_sign(int k, unsigned mask)
{
    if (mask & (1u << k)) return 0;
    return sign_pow(std::popcount(mask & ((1u << k) - 1)));
}

int wedge_sign(unsigned I, unsigned J)
{
    if (I & J) return 0;
    // number of pairs (i ∈ I, j ∈ J) with i > j
    int inv = 0;
    for (int a = 0; a < kMaxN; ++a)
        if (I & (1u << a)) inv += std::popcount(J & ((1u << a) - 1));
    return sign_pow(inv);
}

std::string mask_str(unsigned mask)
{
    std::string s;
    for (int k = 0; k < kMaxN; ++k)
        if (mask & (1u << k)) s += std::to_string(k + 1);
    return s;
}

namespace {

void add_term(std::map<FormKey, Rational>& m, const Monomial& a, unsigned mask, Rational c)
{
    c.canonicalize();
    if (sgn(c) == 0) return;
    auto key = FormKey{a, static_cast<std::uint8_t>(mask)};
    auto it = m.find(key);
    if (it == m.end()) {
        m.emplace(key, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) m.erase(it);
}

void check_key(int n, int p, const Monomial& a, unsigned mask)
{
    if (mask_size(mask) != p) throw ConfigError("form: index set size differs from degree");
    if (mask >> n) throw ConfigError("form: index above n");
    for (int k = n; k < kMaxN; ++k)
        if (a[k]) throw ConfigError("form: variable above n");
}

std::uint64_t pack_key(const Monomial& a, unsigned mask)
{
    std::uint64_t k = mask;
    for (int i = 0; i < kMaxN; ++i) k |= static_cast<std::uint64_t>(a[i]) << (6 + 8 * i);
    return k;
}

}  // namespace

PolyForm::PolyForm(int n, int p) : n_(n), p_(p)
{
    if (n < 1 || n > kMaxN) throw ConfigError("form: n must be in 1..6");
    if (p < 0 || p > n) throw ConfigError("form: degree must be in 0..n");
}

PolyForm PolyForm::term(int n, const Monomial& a, unsigned mask, const Rational& c)
{
    PolyForm w(n, mask_size(mask));
    w.add(a, mask, c);
    return w;
}

Rational PolyForm::coefficient(const Monomial& a, unsigned mask) const
{
    auto it = terms_.find({a, static_cast<std::uint8_t>(mask)});
    return it == terms_.end() ? Rational(0) : it->second;
}

void PolyForm::add(const Monomial& a, unsigned mask, const Rational& c)
{
    check_key(n_, p_, a, mask);
    add_term(terms_, a, mask, c);
}

PolyForm& PolyForm::operator+=(const PolyForm& o)
{
    if (n_ != o.n_ || p_ != o.p_) throw ConfigError("form: mismatched n or degree");
    for (const auto& [k, c] : o.terms_) add_term(terms_, k.first, k.second, c);
    return *this;
}

PolyForm PolyForm::scaled(const Rational& c) const
{
    PolyForm r(n_, p_);
    if (sgn(c) == 0) return r;
    for (const auto& [k, x] : terms_) r.terms_.emplace(k, x * c);
    return r;
}

Current::Current(int n, int p) : n_(n), p_(p)
{
    if (n < 1 || n > kMaxN) throw ConfigError("current: n must be in 1..6");
    if (p < 0 || p > n) throw ConfigError("current: degree must be in 0..n");
}

Current Current::delta(int n, const Monomial& a, unsigned mask, const Rational& c)
{
    Current r(n, mask_size(mask));
    r.add(a, mask, c);
    return r;
}

void Current::add(const Monomial& a, unsigned mask, const Rational& c)
{
    check_key(n_, p_, a, mask);
    add_term(terms_, a, mask, c);
}

Current& Current::operator+=(const Current& o)
{
    if (n_ != o.n_ || p_ != o.p_) throw ConfigError("current: mismatched n or degree");
    for (const auto& [k, c] : o.terms_) add_term(terms_, k.first, k.second, c);
    return *this;
}

Current Current::scaled(const Rational& c) const
{
    Current r(n_, p_);
    if (sgn(c) == 0) return r;
    for (const auto& [k, x] : terms_) r.terms_.emplace(k, x * c);
    return r;
}

std::string Current::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str() << "*d";
        for (int i = 0; i < n_; ++i)
            for (int e = 0; e < k.first[i]; ++e) os << (i + 1);
        os << "[" << mask_str(k.second) << "]";
    }
    return os.str();
}

PolyForm de_rham_d(const PolyForm& w)
{
    if (w.degree() == w.n()) return PolyForm(w.n(), w.n());
    PolyForm r(w.n(), w.degree() + 1);
    for (const auto& [key, c] : w.terms()) {
        const auto& [a, I] = key;
        for (int k = 0; k < w.n(); ++k) {
            if (a[k] == 0) continue;
            int s = wedge_letter_sign(k, I);
            if (s == 0) continue;
            Monomial b = a;
            --b[k];
            r.add(b, I | (1u << k), c * a[k] * s);
        }
    }
    return r;
}

Current boundary(const Current& c)
{
    if (c.degree() == 0) return Current(c.n(), 0);
    Current r(c.n(), c.degree() - 1);
    for (const auto& [key, x] : c.terms()) {
        const auto& [a, I] = key;
        int pos = 0;
        for (int k = 0; k < c.n(); ++k) {
            if (!(I & (1u << k))) continue;
            Monomial b = a;
            ++b[k];
            r.add(b, I & ~(1u << k), x * sign_pow(pos));
            ++pos;
        }
    }
    return r;
}

Rational pairing(const Current& c, const PolyForm& w)
{
    if (c.n() != w.n() || c.degree() != w.degree()) throw ConfigError("pairing: mismatched n or degree");
    Rational s = 0;
    for (const auto& [key, x] : c.terms()) {
        Rational v = w.coefficient(key.first, key.second);
        if (sgn(v) != 0) s += x * v * Rational(monomial_factorial(key.first));
    }
    return s;
}

namespace {

// δ on dt_i dt_j (unordered), with multi-index a.
void add_pair_delta(Current& r, Monomial a, int i, int j, const Rational& c)
{
    if (i == j) return;
    unsigned mask = (1u << i) | (1u << j);
    r.add(a, mask, i < j ? c : -c);
}

}  // namespace

Current rho0(const LieExpr& m, int n)
{
    if (m.degree() != 0) throw DomainError("rho0: input must have cohomological degree 0");
    if (m.letter_count() < 2) throw DomainError("rho0: input must have at least two letters");
    std::vector<Letter> g;
    LieExpr e = m;
    while (!e.is_leaf()) {
        if (!e.left().is_leaf()) return rho0(realize<Rational>(m, n, m.letter_count()));
        g.push_back(e.left().letter());
        e = e.right();
    }
    g.push_back(e.letter());
    Current r(n, 2);
    Monomial a{};
    for (std::size_t k = 0; k + 2 < g.size(); ++k) ++a[letter_indices(g[k])[0] - 1];
    add_pair_delta(r, a, letter_indices(g[g.size() - 2])[0] - 1, letter_indices(g.back())[0] - 1, 1);
    return r;
}

Current rho0(const Tensor& x)
{
    // x = (1/ℓ) Σ_w c_w [w1,[w2,...,[w_{ℓ-1},w_ℓ]]] on a homogeneous Lie element.
    Current r(x.n(), 2);
    for (const auto& [w, c] : x.terms()) {
        int ell = w.size();
        if (w.degree() != 0) throw DomainError("rho0: input must have cohomological degree 0");
        if (ell < 2) throw DomainError("rho0: input must lie in [f0, f0]");
        Monomial a{};
        for (int k = 0; k + 2 < ell; ++k) ++a[letter_indices(w[k])[0] - 1];
        add_pair_delta(r, a, letter_indices(w[ell - 2])[0] - 1, letter_indices(w[ell - 1])[0] - 1, c / ell);
    }
    return r;
}

Current rho_minus_m(const Tensor& x, int m)
{
    if (m < 1) throw DomainError("rho_minus_m: m must be at least 1");
    if (m + 1 > x.n()) throw DomainError("rho_minus_m: degree −m is empty for this n");
    Current r(x.n(), m + 1);
    for (const auto& [w, c] : x.terms()) {
        int ell = w.size();
        if (w.degree() != -m) throw DomainError("rho_minus_m: input degree differs from −m");
        if (letter_size(w[ell - 1]) != m + 1) continue;
        bool single = true;
        Monomial a{};
        for (int k = 0; k + 1 < ell; ++k) {
            if (letter_size(w[k]) != 1) {
                single = false;
                break;
            }
            ++a[letter_indices(w[k])[0] - 1];
        }
        if (single) r.add(a, letter_mask(w[ell - 1]), c);
    }
    return r;
}

Current rho_minus_m(const LieExpr& e, int n)
{
    return rho_minus_m(realize<Rational>(e, n, e.letter_count()), -e.degree());
}

long binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r.get_si();
}

long gamma_dimension(int p, int q, int n)
{
    if (p < 0 || q < 0) return 0;
    return binomial(n, p) * binomial(q + n - 1, n - 1);
}

std::vector<Monomial> monomials_of_degree(int n, int q)
{
    std::vector<Monomial> out;
    if (q < 0) return out;
    Monomial a{};
    auto rec = [&](auto&& self, int k, int left) -> void {
        if (k == n - 1) {
            a[k] = static_cast<std::uint8_t>(left);
            out.push_back(a);
            a[k] = 0;
            return;
        }
        for (int x = left; x >= 0; --x) {
            a[k] = static_cast<std::uint8_t>(x);
            self(self, k + 1, left - x);
        }
        a[k] = 0;
    };
    rec(rec, 0, q);
    return out;
}

std::vector<unsigned> masks_of_size(int n, int p)
{
    std::vector<unsigned> out;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (mask_size(m) == p) out.push_back(m);
    return out;
}

long gamma_closed_dimension(int p, int q, int n)
{
    if (q < 0 || p < 0 || p + 1 > n) return 0;
    Echelon e;
    for (const auto& a : monomials_of_degree(n, q))
        for (unsigned I : masks_of_size(n, p + 1)) {
            Current b = boundary(Current::delta(n, a, I));
            SparseVec v;
            for (const auto& [k, c] : b.terms()) v.e.push_back({pack_key(k.first, k.second), c.get_num()});
            std::sort(v.e.begin(), v.e.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            if (!v.e.empty()) e.insert(std::move(v));
        }
    return static_cast<long>(e.rank());
}

long schur_dimension(const std::vector<int>& partition, int n)
{
    std::vector<int> lam;
    for (std::size_t k = 0; k < partition.size(); ++k) {
        if (partition[k] < 0 || (k > 0 && partition[k] > partition[k - 1]))
            throw ConfigError("schur_dimension: partition must be weakly decreasing and nonnegative");
        if (partition[k] > 0) lam.push_back(partition[k]);
    }
    if (static_cast<int>(lam.size()) > n) return 0;
    Rational r = 1;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (int j = 0; j < lam[i]; ++j) {
            int arm = lam[i] - j - 1;
            int leg = 0;
            for (std::size_t k = i + 1; k < lam.size() && lam[k] > j; ++k) ++leg;
            Rational f(n + j - static_cast<int>(i), arm + leg + 1);
            f.canonicalize();
            r *= f;
        }
    if (r.get_den() != 1) throw std::logic_error("schur_dimension: non-integral hook-content product");
    return r.get_num().get_si();
}

long closed_forms_dimension(int p, int d, int n)
{
    if (p < 1) throw ConfigError("closed_forms_dimension: p must be at least 1");
    if (p > n || d < 0) return 0;
    Echelon e;
    for (const auto& a : monomials_of_degree(n, d + 1))
        for (unsigned I : masks_of_size(n, p - 1)) {
            PolyForm w = de_rham_d(PolyForm::term(n, a, I));
            SparseVec v;
            for (const auto& [k, c] : w.terms()) v.e.push_back({pack_key(k.first, k.second), c.get_num()});
            std::sort(v.e.begin(), v.e.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            if (!v.e.empty()) e.insert(std::move(v));
        }
    return static_cast<long>(e.rank());
}

void ConstantForm::add(unsigned mask, const Tensor& x)
{
    if (x.n() != n_ || x.max_letters() != L_) throw ConfigError("form: coefficient with mismatched n or maxLetters");
    if (mask >> n_) throw ConfigError("form: index above n");
    if (x.is_zero()) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_.emplace(mask, x);
        return;
    }
    it->second += x;
    if (it->second.is_zero()) terms_.erase(it);
}

Tensor ConstantForm::coefficient(unsigned mask) const
{
    auto it = terms_.find(mask);
    return it == terms_.end() ? Tensor(n_, L_) : it->second;
}

ConstantForm& ConstantForm::operator+=(const ConstantForm& o)
{
    for (const auto& [m, x] : o.terms_) add(m, x);
    return *this;
}

ConstantForm ConstantForm::scaled(const Rational& c) const
{
    ConstantForm r(n_, L_);
    for (const auto& [m, x] : terms_) r.add(m, x.scaled(c));
    return r;
}

namespace {

std::map<int, Tensor> by_degree(const Tensor& x)
{
    std::map<int, std::vector<Tensor::Term>> parts;
    for (const auto& t : x.terms()) parts[t.first.degree()].push_back(t);
    std::map<int, Tensor> out;
    for (auto& [d, v] : parts) out.emplace(d, Tensor::from_terms(x.n(), x.max_letters(), std::move(v)));
    return out;
}

}  // namespace

ConstantForm form_bracket(const ConstantForm& a, const ConstantForm& b, BracketSign rule)
{
    ConstantForm r(a.n(), a.max_letters());
    for (const auto& [I, x] : a.terms())
        for (const auto& [J, y] : b.terms()) {
            int w = wedge_sign(I, J);
            if (w == 0) continue;
            for (const auto& [dx, xh] : by_degree(x))
                for (const auto& [dy, yh] : by_degree(y)) {
                    long e = rule == BracketSign::Connection ? static_cast<long>(dx) * (dy + mask_size(J))
                                                             : static_cast<long>(mask_size(I)) * dy;
                    r.add(I | J, graded_commutator(xh, yh).scaled(w * sign_pow(e)));
                }
        }
    return r;
}

ConstantForm form_differential(const FreeDGLie& f, const ConstantForm& a)
{
    ConstantForm r(a.n(), a.max_letters());
    for (const auto& [I, x] : a.terms()) r.add(I, f.differential(x));
    return r;
}

ConstantForm curvature(const FreeDGLie& f, const ConstantForm& A, BracketSign rule)
{
    ConstantForm F = form_differential(f, A);
    F += form_bracket(A, A, rule).scaled(Rational(-1, 2));
    return F;
}

}  // namespace dgl
