#include "dgl/free_lie.hpp"

#include "dgl/forms.hpp"
#include "dgl/linalg.hpp"

#include <algorithm>
#include <mutex>

namespace dgl {

LieExpr LieExpr::leaf(Letter c)
{
    auto p = std::make_shared<Node>();
    p->c = c;
    p->degree = letter_degree(c);
    return LieExpr(p);
}

LieExpr LieExpr::bracket(const LieExpr& a, const LieExpr& b)
{
    auto p = std::make_shared<Node>();
    p->left = a.node_;
    p->right = b.node_;
    p->degree = a.degree() + b.degree();
    p->count = a.letter_count() + b.letter_count();
    return LieExpr(p);
}

LieExpr LieExpr::right_normed(const std::vector<Letter>& g)
{
    if (g.empty()) throw std::invalid_argument("right_normed: empty sequence");
    LieExpr e = leaf(g.back());
    for (std::size_t j = g.size() - 1; j-- > 0;) e = bracket(leaf(g[j]), e);
    return e;
}

std::string LieExpr::str() const
{
    if (is_leaf()) return letter_name(letter());
    return "[" + left().str() + "," + right().str() + "]";
}

Tensor realize(const LieCombination& c, int n, int L)
{
    Tensor r(n, L);
    for (const auto& [q, e] : c) r += realize<Rational>(e, n, L).scaled(q);
    return r;
}

void raw_normalize(RawVec& v)
{
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size();) {
        long long acc = 0;
        std::size_t j = i;
        for (; j < v.size() && v[j].first == v[i].first; ++j) acc += v[j].second;
        if (acc != 0) v[k++] = {v[i].first, acc};
        i = j;
    }
    v.resize(k);
}

RawVec raw_right_normed(const std::vector<Letter>& g)
{
    RawVec t{{Word::single(g.back()).bits(), 1}};
    int deg = letter_degree(g.back());
    RawVec next;
    for (std::size_t j = g.size() - 1; j-- > 0;) {
        Word a = Word::single(g[j]);
        int da = letter_degree(g[j]);
        long long s = ((da * deg) % 2 == 0) ? -1 : 1;
        next.clear();
        next.reserve(2 * t.size());
        for (const auto& [w, c] : t) {
            Word x = Word::from_bits(w);
            next.push_back({a.concat(x).bits(), c});
            next.push_back({x.concat(a).bits(), s * c});
        }
        raw_normalize(next);
        std::swap(t, next);
        deg += da;
    }
    return t;
}

namespace {

struct DTable {
    std::array<std::vector<std::pair<Word, long long>>, 64> d;
    DTable()
    {
        for (int c = 1; c <= kNumLetters; ++c) {
            unsigned I = letter_mask(static_cast<Letter>(c));
            std::map<std::uint64_t, Rational> acc;
            // ordered splittings I = J ⊔ K, J, K nonempty
            for (unsigned J = (I - 1) & I; J != 0; J = (J - 1) & I) {
                unsigned K = I & ~J;
                int sigma = 1;
                for (int a = 0; a < kMaxN; ++a)
                    if (J & (1u << a))
                        for (int b = 0; b < a; ++b)
                            if (K & (1u << b)) sigma = -sigma;
                int nj = mask_size(J);
                int eps = sigma * sign_pow(nj - 1);
                Letter lj = letter_from_mask(static_cast<std::uint8_t>(J));
                Letter lk = letter_from_mask(static_cast<std::uint8_t>(K));
                int koszul = sign_pow(static_cast<long>(letter_degree(lj)) * letter_degree(lk));
                Rational half(eps, 2);
                acc[Word::from_letters({lj, lk}).bits()] += half;
                acc[Word::from_letters({lk, lj}).bits()] -= half * koszul;
            }
            for (const auto& [w, q] : acc) {
                if (sgn(q) == 0) continue;
                if (q.get_den() != 1) throw std::logic_error("differential table: non-integral coefficient");
                d[c].push_back({Word::from_bits(w), q.get_num().get_si()});
            }
        }
    }
};

const DTable& dtable()
{
    static const DTable t;
    return t;
}

}  // namespace

const std::vector<std::pair<Word, long long>>& differential_table(Letter c) { return dtable().d[c]; }

namespace {

// Open-addressing accumulator keyed by packed words; reused across calls.
class Accumulator {
public:
    void reset(std::size_t expected)
    {
        std::size_t cap = 64;
        while (cap < 2 * expected) cap <<= 1;
        if (cap > keys_.size()) {
            keys_.assign(cap, 0);
            vals_.assign(cap, 0);
        } else {
            for (std::size_t k : used_) keys_[k] = 0;
        }
        used_.clear();
        mask_ = keys_.size() - 1;
    }
    void add(std::uint64_t key, long long c)
    {
        if (2 * (used_.size() + 1) > keys_.size()) grow();
        std::uint64_t x = key ^ (key >> 31);
        x *= 0x9E3779B97F4A7C15ULL;
        x ^= x >> 29;
        std::size_t h = static_cast<std::size_t>(x) & mask_;
        while (keys_[h] != 0 && keys_[h] != key) h = (h + 1) & mask_;
        if (keys_[h] == 0) {
            keys_[h] = key;
            vals_[h] = c;
            used_.push_back(h);
        } else {
            vals_[h] += c;
        }
    }
    bool all_zero() const
    {
        for (std::size_t k : used_)
            if (vals_[k] != 0) return false;
        return true;
    }
    void extract(RawVec& out) const
    {
        out.clear();
        for (std::size_t k : used_)
            if (vals_[k] != 0) out.push_back({keys_[k], vals_[k]});
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }

private:
    void grow()
    {
        std::vector<std::pair<std::uint64_t, long long>> live;
        live.reserve(used_.size());
        for (std::size_t k : used_) live.push_back({keys_[k], vals_[k]});
        keys_.assign(2 * keys_.size(), 0);
        vals_.assign(keys_.size(), 0);
        used_.clear();
        mask_ = keys_.size() - 1;
        for (const auto& [k, v] : live) add(k, v);
    }
    std::vector<std::uint64_t> keys_;  // packed words are never 0 once nonempty
    std::vector<long long> vals_;
    std::vector<std::size_t> used_;
    std::size_t mask_ = 0;
};

struct PackedTable {
    // d of each letter as 12-bit letter pairs
    std::array<std::vector<std::pair<std::uint64_t, long long>>, 64> d;
    std::array<std::uint8_t, 64> odd{};
    PackedTable()
    {
        for (int c = 1; c <= kNumLetters; ++c) {
            for (const auto& [w, k] : dtable().d[c])
                d[c].push_back({(static_cast<std::uint64_t>(w[0]) << 6) | w[1], k});
            odd[c] = letter_degree(static_cast<Letter>(c)) % 2 != 0;
        }
    }
};

const PackedTable& ptable()
{
    static const PackedTable t;
    return t;
}

constexpr std::uint64_t kBody = (1ull << 60) - 1;

template <class Emit>
inline void differential_terms(std::uint64_t bits, long long c, Emit&& emit)
{
    const auto& tab = ptable();
    int m = static_cast<int>(bits >> 60);
    std::uint64_t body = bits & kBody;
    std::uint64_t len = static_cast<std::uint64_t>(m + 1) << 60;
    long long s = c;
    for (int j = 0; j < m; ++j) {
        unsigned l = static_cast<unsigned>((body >> (54 - 6 * j)) & 63u);
        const auto& dl = tab.d[l];
        if (!dl.empty()) {
            std::uint64_t pre = body & ~((1ull << (60 - 6 * j)) - 1);
            std::uint64_t suf = (body & ((1ull << (54 - 6 * j)) - 1)) >> 6;
            for (const auto& [pair, k] : dl) emit(len | pre | (pair << (48 - 6 * j)) | suf, s * k);
        }
        if (tab.odd[l]) s = -s;
    }
}

thread_local Accumulator acc1, acc2;

}  // namespace

RawVec raw_differential(const RawVec& v, int max_letters)
{
    RawVec out;
    acc1.reset(v.size() * 8);
    for (const auto& [bits, c] : v) {
        if (static_cast<int>(bits >> 60) + 1 > max_letters) continue;
        differential_terms(bits, c, [](std::uint64_t w, long long x) { acc1.add(w, x); });
    }
    acc1.extract(out);
    return out;
}

RawVec raw_bracket(const RawVec& x, int dx, const RawVec& y, int dy, int max_letters)
{
    RawVec out;
    if (x.empty() || y.empty()) return out;
    long long s = ((static_cast<long>(dx) * dy) % 2 == 0) ? -1 : 1;
    int lx = static_cast<int>(x.front().first >> 60), ly = static_cast<int>(y.front().first >> 60);
    bool homogeneous = true;
    for (const auto& t : x) homogeneous &= static_cast<int>(t.first >> 60) == lx;
    for (const auto& t : y) homogeneous &= static_cast<int>(t.first >> 60) == ly;
    if (homogeneous && lx + ly > max_letters) return out;
    out.reserve(2 * x.size() * y.size());
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            Word u = Word::from_bits(a), v = Word::from_bits(b);
            if (u.size() + v.size() > max_letters) continue;
            out.push_back({u.concat(v).bits(), ca * cb});
            out.push_back({v.concat(u).bits(), s * ca * cb});
        }
    raw_normalize(out);
    return out;
}

int high_letter_count(Word w)
{
    int h = 0;
    for (int k = 0; k < w.size(); ++k) h += letter_size(w[k]) >= 2;
    return h;
}

RawVec raw_single_high_part(const RawVec& v)
{
    RawVec out;
    for (const auto& t : v)
        if (high_letter_count(Word::from_bits(t.first)) == 1) out.push_back(t);
    return out;
}

Tensor raw_to_tensor(const RawVec& v, int n, int L)
{
    std::vector<Tensor::Term> terms;
    for (const auto& [w, c] : v) terms.push_back({Word::from_bits(w), Rational(static_cast<long>(c))});
    return Tensor::from_terms(n, L, std::move(terms));
}

RawVec tensor_to_raw(const Tensor& t)
{
    RawVec v;
    for (const auto& [w, c] : t.terms()) {
        if (c.get_den() != 1 || !c.get_num().fits_slong_p()) throw DomainError("tensor_to_raw: non-integral coefficient");
        v.push_back({w.bits(), c.get_num().get_si()});
    }
    return v;
}

bool raw_d_squared_vanishes(const RawVec& v)
{
    RawVec dv = raw_differential(v, kMaxWordLetters);
    acc2.reset(dv.size() * 12);
    for (const auto& [bits, c] : dv) {
        if (static_cast<int>(bits >> 60) + 1 > kMaxWordLetters) throw std::length_error("d squared: word too long");
        differential_terms(bits, c, [](std::uint64_t w, long long x) { acc2.add(w, x); });
    }
    return acc2.all_zero();
}

std::vector<Content> block_contents(int n, int ell, int i)
{
    // |α| = ℓ − i, each index used at most ℓ times, at least ℓ letters total ≤ |α|.
    int total = ell - i;
    std::vector<Content> out;
    if (total < ell || ell < 1) return out;
    Content a{};
    auto rec = [&](auto&& self, int k, int left) -> void {
        if (k == n) {
            if (left == 0) out.push_back(a);
            return;
        }
        for (int x = std::min(left, ell); x >= 0; --x) {
            a[k] = static_cast<std::uint8_t>(x);
            self(self, k + 1, left - x);
        }
        a[k] = 0;
    };
    rec(rec, 0, total);
    // keep only contents realizable by exactly ℓ letters
    std::erase_if(out, [&](const Content& c) { return multisets_with_content(n, ell, c).empty(); });
    return out;
}

std::vector<std::vector<Letter>> multisets_with_content(int n, int ell, const Content& alpha)
{
    std::vector<std::vector<Letter>> out;
    auto alph = alphabet(n);
    std::vector<Letter> cur;
    Content left = alpha;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(cur.size()) == ell) {
            if (std::all_of(left.begin(), left.end(), [](std::uint8_t x) { return x == 0; })) out.push_back(cur);
            return;
        }
        for (std::size_t k = from; k < alph.size(); ++k) {
            unsigned m = letter_mask(alph[k]);
            bool ok = true;
            for (int b = 0; b < kMaxN; ++b)
                if ((m & (1u << b)) && left[b] == 0) ok = false;
            if (!ok) continue;
            for (int b = 0; b < kMaxN; ++b)
                if (m & (1u << b)) --left[b];
            cur.push_back(alph[k]);
            self(self, k);
            cur.pop_back();
            for (int b = 0; b < kMaxN; ++b)
                if (m & (1u << b)) ++left[b];
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<std::vector<Letter>> jacobi_monomials(const std::vector<Letter>& multiset, Letter innermost)
{
    std::vector<Letter> rest = multiset;
    std::sort(rest.begin(), rest.end());
    Letter last = innermost ? innermost : rest.back();
    auto it = std::find(rest.begin(), rest.end(), last);
    if (it == rest.end()) throw std::invalid_argument("jacobi_monomials: innermost letter not in multiset");
    rest.erase(it);
    std::vector<std::vector<Letter>> out;
    do {
        auto g = rest;
        g.push_back(last);
        out.push_back(std::move(g));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

std::vector<std::vector<Letter>> all_monomials(const std::vector<Letter>& multiset)
{
    std::vector<Letter> g = multiset;
    std::sort(g.begin(), g.end());
    std::vector<std::vector<Letter>> out;
    do out.push_back(g);
    while (std::next_permutation(g.begin(), g.end()));
    return out;
}

Letter relabel_letter(Letter c, const std::array<int, kMaxN>& pi, int* sign)
{
    std::vector<int> img;
    for (int i : letter_indices(c)) img.push_back(pi[i - 1]);
    int inv = 0;
    for (std::size_t a = 0; a < img.size(); ++a)
        for (std::size_t b = a + 1; b < img.size(); ++b)
            if (img[a] > img[b]) ++inv;
    if (sign) *sign = sign_pow(inv);
    unsigned m = 0;
    for (int i : img) m |= 1u << i;
    return letter_from_mask(static_cast<std::uint8_t>(m));
}

Tensor relabel(const Tensor& t, const std::array<int, kMaxN>& pi)
{
    std::vector<Tensor::Term> out;
    for (const auto& [w, c] : t.terms()) {
        Word x;
        int s = 1;
        for (int k = 0; k < w.size(); ++k) {
            int sk;
            x.push_back(relabel_letter(w[k], pi, &sk));
            s *= sk;
        }
        out.push_back({x, c * s});
    }
    return Tensor::from_terms(t.n(), t.max_letters(), std::move(out));
}

bool is_orbit_representative(const std::vector<Letter>& multiset, int n)
{
    std::vector<Letter> base = multiset;
    std::sort(base.begin(), base.end());
    std::array<int, kMaxN> pi{};
    for (int k = 0; k < kMaxN; ++k) pi[k] = k;
    std::vector<Letter> img(base.size());
    do {
        for (std::size_t k = 0; k < base.size(); ++k) img[k] = relabel_letter(base[k], pi);
        std::sort(img.begin(), img.end());
        if (img < base) return false;
    } while (std::next_permutation(pi.begin(), pi.begin() + n));
    return true;
}

namespace {

SparseVec to_sparse(const RawVec& v)
{
    SparseVec s;
    s.e.reserve(v.size());
    for (const auto& [w, c] : v) s.e.push_back({w, Integer(static_cast<long>(c))});
    return s;
}

}  // namespace

LieBlock lie_block(int n, int ell, const Content& alpha)
{
    LieBlock b;
    b.ell = ell;
    b.alpha = alpha;
    int tot = 0;
    for (auto x : alpha) tot += x;
    b.degree = ell - tot;
    Echelon e;
    for (const auto& ms : multisets_with_content(n, ell, alpha))
        for (auto& g : jacobi_monomials(ms)) {
            RawVec r = raw_right_normed(g);
            if (!r.empty() && e.insert(to_sparse(r))) b.basis.push_back(b.monomials.size());
            b.monomials.push_back(std::move(g));
        }
    return b;
}

FreeDGLie::FreeDGLie(int n, int max_letters) : n_(n), L_(max_letters)
{
    if (n < 1 || n > kMaxN) throw ConfigError("n must be in 1..6");
    if (max_letters < 1 || max_letters > kMaxWordLetters) throw ConfigError("maxLetters must be in 1..10");
}

LieCombination FreeDGLie::differential_on_generator(Letter c) const
{
    // ½ Σ over ordered splittings, collected on unordered pairs (J < K as codes).
    unsigned I = letter_mask(c);
    std::map<std::pair<Letter, Letter>, Rational> acc;
    for (unsigned J = (I - 1) & I; J != 0; J = (J - 1) & I) {
        unsigned K = I & ~J;
        int sigma = 1;
        for (int a = 0; a < kMaxN; ++a)
            if (J & (1u << a))
                for (int b = 0; b < a; ++b)
                    if (K & (1u << b)) sigma = -sigma;
        int eps = sigma * sign_pow(mask_size(J) - 1);
        Letter lj = letter_from_mask(static_cast<std::uint8_t>(J)), lk = letter_from_mask(static_cast<std::uint8_t>(K));
        // [Z_K, Z_J] = −(−1)^{|J||K|} [Z_J, Z_K]
        if (lj < lk) acc[{lj, lk}] += Rational(eps, 2);
        else acc[{lk, lj}] -= Rational(eps * sign_pow(static_cast<long>(letter_degree(lj)) * letter_degree(lk)), 2);
    }
    LieCombination out;
    // Order with the singleton factor first: [Z_i, Z_{I∖i}] as displayed in dZ_ijp.
    for (const auto& [p, q] : acc)
        if (sgn(q) != 0) {
            auto [a, b] = p;
            if (letter_size(a) <= letter_size(b)) out.push_back({q, LieExpr::bracket(LieExpr::leaf(a), LieExpr::leaf(b))});
            else out.push_back({-q * sign_pow(static_cast<long>(letter_degree(a)) * letter_degree(b)),
                                LieExpr::bracket(LieExpr::leaf(b), LieExpr::leaf(a))});
        }
    return out;
}

std::vector<LieExpr> FreeDGLie::lie_spanning_set(int i, int ell) const
{
    std::vector<LieExpr> out;
    for (const auto& a : block_contents(n_, ell, i))
        for (const auto& ms : multisets_with_content(n_, ell, a))
            for (const auto& g : jacobi_monomials(ms)) out.push_back(LieExpr::right_normed(g));
    return out;
}

namespace {
std::mutex& cache_mutex()
{
    static std::mutex m;
    return m;
}
}  // namespace

long FreeDGLie::bigraded_dimension(int i, int ell) const
{
    long total = 0;
    for (const auto& a : block_contents(n_, ell, i)) {
        {
            std::lock_guard<std::mutex> lk(cache_mutex());
            auto it = dim_cache_.find({ell, a});
            if (it != dim_cache_.end()) {
                total += it->second;
                continue;
            }
        }
        long d = static_cast<long>(lie_block(n_, ell, a).basis.size());
        std::lock_guard<std::mutex> lk(cache_mutex());
        dim_cache_[{ell, a}] = d;
        total += d;
    }
    return total;
}

long FreeDGLie::block_d_rank(int ell, const Content& alpha) const
{
    {
        std::lock_guard<std::mutex> lk(cache_mutex());
        auto it = rank_cache_.find({ell, alpha});
        if (it != rank_cache_.end()) return it->second;
    }
    LieBlock b = lie_block(n_, ell, alpha);
    Echelon e;
    for (std::size_t k : b.basis) {
        RawVec dv = raw_differential(raw_right_normed(b.monomials[k]), ell + 1);
        if (!dv.empty()) e.insert(to_sparse(dv));
    }
    long r = static_cast<long>(e.rank());
    std::lock_guard<std::mutex> lk(cache_mutex());
    rank_cache_[{ell, alpha}] = r;
    dim_cache_[{ell, alpha}] = static_cast<long>(b.basis.size());
    return r;
}

long FreeDGLie::cohomology_dimension(int i, int ell) const
{
    if (ell > L_) throw ConfigError("cohomology_dimension: ℓ exceeds maxLetters");
    long h = 0;
    for (const auto& a : block_contents(n_, ell, i)) {
        long dim = bigraded_dimension_block(ell, a);
        long ker = dim - block_d_rank(ell, a);
        long im = ell > 1 ? block_d_rank(ell - 1, a) : 0;
        h += ker - im;
    }
    return h;
}

std::vector<FreeDGLie::DimsRow> FreeDGLie::dims_report() const
{
    std::vector<DimsRow> rows;
    for (int ell = 1; ell <= L_; ++ell)
        for (int i = 0; i >= ell - ell * n_; --i) {
            DimsRow r{i, ell, 0, 0, 0, 0};
            for (const auto& a : block_contents(n_, ell, i)) {
                long dim = bigraded_dimension_block(ell, a);
                long rk = block_d_rank(ell, a);
                long im = ell > 1 ? block_d_rank(ell - 1, a) : 0;
                r.dim += dim;
                r.ker += dim - rk;
                r.im += im;
            }
            r.H = r.ker - r.im;
            if (r.dim > 0) rows.push_back(r);
        }
    return rows;
}

long FreeDGLie::bigraded_dimension_block(int ell, const Content& alpha) const
{
    block_d_rank(ell, alpha);
    std::lock_guard<std::mutex> lk(cache_mutex());
    return dim_cache_.at({ell, alpha});
}

ConstantForm FreeDGLie::universal_connection() const
{
    ConstantForm A(n_, L_);
    for (Letter c : generators()) A.add(letter_mask(c), Tensor::letter(n_, L_, c));
    return A;
}

std::vector<std::vector<long>> pbw_dimensions(int n, int max_letters)
{
    const int W = max_letters * n;
    using Series = std::vector<std::vector<Integer>>;  // [ℓ][w]
    auto zero = [&] { return Series(max_letters + 1, std::vector<Integer>(W + 1, 0)); };
    auto mul = [&](const Series& a, const Series& b) {
        Series r = zero();
        for (int l1 = 0; l1 <= max_letters; ++l1)
            for (int w1 = 0; w1 <= W; ++w1) {
                if (sgn(a[l1][w1]) == 0) continue;
                for (int l2 = 0; l1 + l2 <= max_letters; ++l2)
                    for (int w2 = 0; w1 + w2 <= W; ++w2)
                        if (sgn(b[l2][w2]) != 0) r[l1 + l2][w1 + w2] += a[l1][w1] * b[l2][w2];
            }
        return r;
    };
    // target T = 1/(1 − u((1+v)^n − 1)) = Σ_k (u·p(v))^k
    Series T = zero(), P = zero(), pw = zero();
    for (int w = 1; w <= n; ++w) P[1][w] = Integer(static_cast<long>(binomial(n, w)));
    pw[0][0] = 1;
    for (int k = 0; k <= max_letters; ++k) {
        for (int l = 0; l <= max_letters; ++l)
            for (int w = 0; w <= W; ++w) T[l][w] += pw[l][w];
        pw = mul(pw, P);
    }
    std::vector<std::vector<long>> a(max_letters + 1, std::vector<long>(W + 1, 0));
    Series prod = zero();
    prod[0][0] = 1;
    // Peel off factors in increasing (ℓ, w): the coefficient of u^ℓ v^w in prod
    // differs from T only by the new factor's linear term ±a.
    for (int l = 1; l <= max_letters; ++l)
        for (int w = l; w <= W; ++w) {
            Integer diff = T[l][w] - prod[l][w];
            long dim = diff.get_si();
            a[l][w] = dim;
            if (dim == 0) continue;
            bool odd = ((l - w) % 2) != 0;
            // factor f = (1 − x)^{−dim} (even) or (1 + x)^{dim} (odd), x = u^l v^w
            Series f = zero();
            for (int k = 0; k * l <= max_letters && k * w <= W; ++k) {
                Integer c;
                if (odd) mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(dim), static_cast<unsigned long>(k));
                else mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(dim + k - 1), static_cast<unsigned long>(k));
                f[k * l][k * w] = c;
            }
            prod = mul(prod, f);
        }
    return a;
}

}  // namespace dgl
