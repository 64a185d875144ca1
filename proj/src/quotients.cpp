#include "dgl/quotients.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace dgl {

namespace {

int content_total(const Content& a)
{
    int t = 0;
    for (auto x : a) t += x;
    return t;
}

bool content_leq(const Content& b, const Content& a)
{
    for (int k = 0; k < kMaxN; ++k)
        if (b[k] > a[k]) return false;
    return true;
}

Content content_minus(const Content& a, const Content& b)
{
    Content r{};
    for (int k = 0; k < kMaxN; ++k) r[k] = static_cast<std::uint8_t>(a[k] - b[k]);
    return r;
}

// Contents β ≤ α that occur with ℓ letters.
std::vector<Content> contents_below(int n, int ell, const Content& alpha)
{
    std::vector<Content> out;
    for (int i = 0; i >= ell - ell * n; --i)
        for (const auto& b : block_contents(n, ell, i))
            if (content_leq(b, alpha)) out.push_back(b);
    return out;
}

SparseVec to_sparse(const RawVec& v)
{
    SparseVec s;
    s.e.reserve(v.size());
    for (const auto& [w, c] : v) s.e.push_back({w, Integer(static_cast<long>(c))});
    return s;
}

int multiset_high_count(const std::vector<Letter>& ms)
{
    int h = 0;
    for (Letter c : ms) h += letter_size(c) >= 2;
    return h;
}

Letter multiset_high_letter(const std::vector<Letter>& ms)
{
    for (Letter c : ms)
        if (letter_size(c) >= 2) return c;
    return 0;
}

enum class Part { Zero, Single, Multi, All };

struct PartBasis {
    std::vector<std::vector<Letter>> monomials;
    std::vector<RawVec> vectors;
};

// Independent right-normed monomials spanning one part of the block (ℓ, α):
// Zero = no higher letter, Single = exactly one (placed innermost), Multi = two or more.
const PartBasis& part_basis(int n, int ell, const Content& alpha, Part part)
{
    static std::mutex mu;
    static std::map<std::tuple<int, int, Content, int>, std::unique_ptr<PartBasis>> cache;
    auto key = std::make_tuple(n, ell, alpha, static_cast<int>(part));
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto pb = std::make_unique<PartBasis>();
    Echelon e;
    for (const auto& ms : multisets_with_content(n, ell, alpha)) {
        int h = multiset_high_count(ms);
        bool want = part == Part::All || (part == Part::Zero && h == 0) || (part == Part::Single && h == 1) ||
                    (part == Part::Multi && h >= 2);
        if (!want) continue;
        for (auto& g : jacobi_monomials(ms, h == 1 ? multiset_high_letter(ms) : 0)) {
            RawVec r = raw_right_normed(g);
            if (r.empty() || !e.insert(to_sparse(r))) continue;
            pb->monomials.push_back(std::move(g));
            pb->vectors.push_back(std::move(r));
        }
    }
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::move(pb);
    return *slot;
}

void add_candidates(QuotientBlock& b, const PartBasis& pb)
{
    for (std::size_t k = 0; k < pb.monomials.size(); ++k)
        if (b.reducer.add_basis_candidate(to_rvec(pb.vectors[k])) >= 0) {
            b.basis.push_back(pb.monomials[k]);
            b.basis_vectors.push_back(pb.vectors[k]);
        }
}

std::vector<std::string> block_labels(const QuotientBlock& b)
{
    std::vector<std::string> out;
    for (const auto& g : b.basis) out.push_back(LieExpr::right_normed(g).str());
    return out;
}

long rank_of_rows(const std::vector<std::vector<Rational>>& rows)
{
    Echelon e;
    for (const auto& r : rows) {
        std::vector<std::pair<std::uint64_t, Rational>> v;
        for (std::size_t k = 0; k < r.size(); ++k)
            if (sgn(r[k]) != 0) v.push_back({k, r[k]});
        if (v.empty()) continue;
        SparseVec s;
        make_primitive(std::move(v), s);
        e.insert(std::move(s));
    }
    return static_cast<long>(e.rank());
}

void check_n(int n)
{
    if (n < 1 || n > kMaxN) throw ConfigError("n must be in 1..6");
}

}  // namespace

QuotientReducer::RVec to_rvec(const RawVec& v)
{
    QuotientReducer::RVec r;
    r.reserve(v.size());
    for (const auto& [w, c] : v) r.push_back({w, Rational(static_cast<long>(c))});
    return r;
}

std::vector<Rational> QuotientBlock::coordinates(const RawVec& v) const
{
    return reducer.coordinates(to_rvec(project ? raw_single_high_part(v) : v));
}

bool QuotientBlock::is_relation(const RawVec& v) const
{
    auto c = coordinates(v);
    return std::all_of(c.begin(), c.end(), [](const Rational& q) { return sgn(q) == 0; });
}

// ---------------------------------------------------------------- semiabelianization

Semiabelianization::Semiabelianization(int n) : n_(n) { check_n(n); }

const QuotientBlock& Semiabelianization::block(int ell, const Content& alpha) const
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = blocks_.find({ell, alpha});
        if (it != blocks_.end()) return *it->second;
    }
    auto b = std::make_unique<QuotientBlock>();
    b->ell = ell;
    b->alpha = alpha;
    b->degree = ell - content_total(alpha);
    b->ambient_dim = static_cast<long>(part_basis(n_, ell, alpha, Part::All).vectors.size());
    if (b->degree == 0) {
        add_candidates(*b, part_basis(n_, ell, alpha, Part::Zero));
    } else {
        // relations: the components with ≥ 2 higher letters, and d of those one letter down
        b->project = true;
        long w2 = static_cast<long>(part_basis(n_, ell, alpha, Part::Multi).vectors.size());
        if (ell >= 2)
            for (const auto& x : part_basis(n_, ell - 1, alpha, Part::Multi).vectors) {
                RawVec dx = raw_single_high_part(raw_differential(x, ell));
                if (!dx.empty()) b->reducer.add_relation(to_rvec(dx));
            }
        b->relation_rank = w2 + static_cast<long>(b->reducer.relation_rank());
        add_candidates(*b, part_basis(n_, ell, alpha, Part::Single));
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto& slot = blocks_[{ell, alpha}];
    if (!slot) slot = std::move(b);
    return *slot;
}

QuotientSlice Semiabelianization::slice(int i, int ell) const
{
    QuotientSlice s;
    s.i = i;
    s.ell = ell;
    for (const auto& a : block_contents(n_, ell, i)) {
        const auto& b = block(ell, a);
        s.ambient_dim += b.ambient_dim;
        s.relation_rank += b.relation_rank;
        s.dim += b.dim();
        auto l = block_labels(b);
        s.labels.insert(s.labels.end(), l.begin(), l.end());
    }
    return s;
}

long Semiabelianization::d_rank(int ell, const Content& alpha) const
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = ranks_.find({ell, alpha});
        if (it != ranks_.end()) return it->second;
    }
    const auto& src = block(ell, alpha);
    long r = 0;
    if (src.degree < 0 && src.dim() > 0) {
        if (src.degree == -1) {
            Echelon e;
            for (const auto& v : src.basis_vectors) {
                RawVec dv = raw_differential(v, ell + 1);
                if (!dv.empty()) e.insert(to_sparse(dv));
            }
            r = static_cast<long>(e.rank());
        } else {
            const auto& tgt = block(ell + 1, alpha);
            std::vector<std::vector<Rational>> rows;
            for (const auto& v : src.basis_vectors) rows.push_back(tgt.coordinates(raw_differential(v, ell + 1)));
            r = rank_of_rows(rows);
        }
    }
    std::lock_guard<std::mutex> lk(mu_);
    ranks_[{ell, alpha}] = r;
    return r;
}

long Semiabelianization::d_rank(int i, int ell) const
{
    if (ell < 1) return 0;
    long r = 0;
    for (const auto& a : block_contents(n_, ell, i)) r += d_rank(ell, a);
    return r;
}

long Semiabelianization::kernel_dimension(int i, int ell) const { return slice(i, ell).dim - d_rank(i, ell); }

long Semiabelianization::cohomology_dimension(int i, int ell) const
{
    return kernel_dimension(i, ell) - d_rank(i - 1, ell - 1);
}

QuotientSlice semiabelianization_slice(int n, int i, int ell) { return Semiabelianization(n).slice(i, ell); }

// ---------------------------------------------------------------- abelianization of 𝔣̃

Abelianization::Abelianization(int n) : n_(n) { check_n(n); }

const QuotientBlock& Abelianization::block(int ell, const Content& alpha) const
{
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = blocks_.find({ell, alpha});
        if (it != blocks_.end()) return *it->second;
    }
    auto b = std::make_unique<QuotientBlock>();
    b->ell = ell;
    b->alpha = alpha;
    b->degree = ell - content_total(alpha);
    if (b->degree == 0) {
        // 𝔣̃⁰ = [FL, FL] is FL in letter counts ≥ 2; relations [[FL,FL],[FL,FL]]
        if (ell >= 2) {
            b->ambient_dim = static_cast<long>(part_basis(n_, ell, alpha, Part::Zero).vectors.size());
            for (int l1 = 2; l1 + 2 <= ell; ++l1)
                for (const auto& beta : contents_below(n_, l1, alpha)) {
                    if (l1 != content_total(beta)) continue;
                    Content rest = content_minus(alpha, beta);
                    for (const auto& x : part_basis(n_, l1, beta, Part::Zero).vectors)
                        for (const auto& y : part_basis(n_, ell - l1, rest, Part::Zero).vectors) {
                            RawVec r = raw_bracket(x, 0, y, 0);
                            if (!r.empty()) b->reducer.add_relation(to_rvec(r));
                        }
                }
            b->relation_rank = static_cast<long>(b->reducer.relation_rank());
            add_candidates(*b, part_basis(n_, ell, alpha, Part::Zero));
        }
    } else {
        // relations: components with ≥ 2 higher letters, and [𝔣̃⁰, 𝔣^{i}]
        b->project = true;
        b->ambient_dim = static_cast<long>(part_basis(n_, ell, alpha, Part::All).vectors.size());
        long w2 = static_cast<long>(part_basis(n_, ell, alpha, Part::Multi).vectors.size());
        for (int l1 = 2; l1 < ell; ++l1)
            for (const auto& beta : contents_below(n_, l1, alpha)) {
                if (l1 != content_total(beta)) continue;
                Content rest = content_minus(alpha, beta);
                const auto& ys = part_basis(n_, ell - l1, rest, Part::Single).vectors;
                for (const auto& x : part_basis(n_, l1, beta, Part::Zero).vectors)
                    for (const auto& y : ys) {
                        RawVec r = raw_bracket(x, 0, y, b->degree);
                        if (!r.empty()) b->reducer.add_relation(to_rvec(r));
                    }
            }
        b->relation_rank = w2 + static_cast<long>(b->reducer.relation_rank());
        add_candidates(*b, part_basis(n_, ell, alpha, Part::Single));
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto& slot = blocks_[{ell, alpha}];
    if (!slot) slot = std::move(b);
    return *slot;
}

QuotientSlice Abelianization::slice(int i, int ell) const
{
    QuotientSlice s;
    s.i = i;
    s.ell = ell;
    for (const auto& a : block_contents(n_, ell, i)) {
        const auto& b = block(ell, a);
        s.ambient_dim += b.ambient_dim;
        s.relation_rank += b.relation_rank;
        s.dim += b.dim();
        auto l = block_labels(b);
        s.labels.insert(s.labels.end(), l.begin(), l.end());
    }
    return s;
}

QuotientSlice abelianization_slice(int n, int i, int ell) { return Abelianization(n).slice(i, ell); }

// ---------------------------------------------------------------- crossed-module quotient

CrossedModuleQuotient crossed_module_quotient(int n, int max_letters)
{
    if (max_letters < 1 || max_letters + 1 > kMaxWordLetters) throw ConfigError("maxLetters out of range");
    // In degree −1 the relations d[𝔣^{−1},𝔣^{−1}] are exactly those of the
    // semiabelianization ([𝔣^{≤−1},𝔣^{≤−1}] has no degree −1 part).
    Semiabelianization s(n);
    CrossedModuleQuotient q;
    q.n = n;
    q.max_letters = max_letters;
    for (int ell = 1; ell <= max_letters; ++ell) {
        CrossedModuleQuotient::Row r{};
        r.ell = ell;
        r.dim0 = s.slice(0, ell).dim;
        r.dim1 = n >= 2 ? s.slice(-1, ell).dim : 0;
        r.d_rank = n >= 2 ? s.d_rank(-1, ell) : 0;
        r.H0 = r.dim0 - (n >= 2 ? s.d_rank(-1, ell - 1) : 0);
        r.H1 = r.dim1 - r.d_rank;
        q.rows.push_back(r);
    }
    return q;
}

// ---------------------------------------------------------------- lower central series

QuotientSlice lower_central_series_slice(int n, int r, int i, int ell)
{
    check_n(n);
    if (r < 1) throw ConfigError("lower_central_series_slice: r must be at least 1");
    std::map<std::tuple<int, int, Content>, std::vector<RawVec>> memo;
    std::function<const std::vector<RawVec>&(int, int, const Content&)> gamma =
        [&](int rr, int l, const Content& a) -> const std::vector<RawVec>& {
        auto key = std::make_tuple(rr, l, a);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<RawVec> out;
        if (rr == 1) {
            out = part_basis(n, l, a, Part::All).vectors;
        } else if (l >= rr) {
            Echelon e;
            for (int l1 = 1; l1 < l; ++l1)
                for (const auto& beta : contents_below(n, l1, a)) {
                    Content rest = content_minus(a, beta);
                    int dx = l1 - content_total(beta), dy = (l - l1) - content_total(rest);
                    const auto& xs = part_basis(n, l1, beta, Part::All).vectors;
                    if (xs.empty()) continue;
                    const auto& ys = gamma(rr - 1, l - l1, rest);
                    for (const auto& x : xs)
                        for (const auto& y : ys) {
                            RawVec v = raw_bracket(x, dx, y, dy);
                            if (!v.empty() && e.insert(to_sparse(v))) out.push_back(std::move(v));
                        }
                }
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    QuotientSlice s;
    s.i = i;
    s.ell = ell;
    for (const auto& a : block_contents(n, ell, i)) {
        s.ambient_dim += static_cast<long>(part_basis(n, ell, a, Part::All).vectors.size());
        s.relation_rank += static_cast<long>(gamma(r, ell, a).size());
    }
    s.dim = s.ambient_dim - s.relation_rank;
    return s;
}

// ---------------------------------------------------------------- structure constants

namespace {

using Row = NilpotentCrossedComplex::Row;

Row sparse_row(const std::vector<Rational>& c, int offset)
{
    Row r;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) != 0) r.push_back({offset + static_cast<int>(k), c[k]});
    return r;
}

void row_axpy(std::map<int, Rational>& acc, const Rational& s, const Row& r)
{
    for (const auto& [k, c] : r) {
        auto& x = acc[k];
        x += s * c;
        if (sgn(x) == 0) acc.erase(k);
    }
}

Row to_row(const std::map<int, Rational>& m) { return Row(m.begin(), m.end()); }

}  // namespace

int NilpotentCrossedComplex::letter_index(Letter c) const
{
    int k = letter_size(c) - 1;
    if (k >= static_cast<int>(degrees.size())) return -1;
    const auto& D = degrees[k];
    std::uint64_t bits = Word::single(c).bits();
    for (int b = 0; b < D.dim(); ++b)
        if (D.letters[b] == 1 && D.vectors[b].size() == 1 && D.vectors[b][0].first == bits) return b;
    return -1;
}

NilpotentCrossedComplex extract_structure_constants(int n, int d)
{
    check_n(n);
    if (d < 1 || d + 1 > kMaxWordLetters) throw ConfigError("extract_structure_constants: class must be in 1..9");
    Semiabelianization S(n);
    NilpotentCrossedComplex C;
    C.n = n;
    C.cls = d;
    int depth = n - 1;
    C.degrees.resize(depth + 1);
    // offset of each block inside its degree
    std::map<std::pair<int, Content>, int> offset;
    for (int k = 0; k <= depth; ++k)
        for (int ell = 1; ell <= d; ++ell)
            for (const auto& a : block_contents(n, ell, -k)) {
                const auto& b = S.block(ell, a);
                offset[{ell, a}] = C.degrees[k].dim();
                for (std::size_t j = 0; j < b.basis.size(); ++j) {
                    C.degrees[k].labels.push_back(LieExpr::right_normed(b.basis[j]).str());
                    C.degrees[k].letters.push_back(ell);
                    C.degrees[k].vectors.push_back(b.basis_vectors[j]);
                }
            }
    while (C.degrees.size() > 1 && C.degrees.back().dim() == 0) C.degrees.pop_back();
    depth = C.depth();

    auto content_of = [](const RawVec& v) { return word_content(Word::from_bits(v.front().first)); };
    auto express = [&](const RawVec& v, int ell, int k) -> Row {
        if (v.empty() || ell > d) return {};
        Content a = content_of(v);
        auto it = offset.find({ell, a});
        if (it == offset.end()) return {};
        const auto& b = S.block(ell, a);
        if (b.degree != -k) throw std::logic_error("extract_structure_constants: degree mismatch");
        return sparse_row(b.coordinates(v), it->second);
    };

    C.bracket.resize(depth + 1);
    C.differential.resize(depth + 1);
    const auto& D0 = C.degrees[0];
    for (int k = 0; k <= depth; ++k) {
        const auto& Dk = C.degrees[k];
        C.bracket[k].assign(D0.dim(), std::vector<Row>(Dk.dim()));
        for (int a = 0; a < D0.dim(); ++a)
            for (int b = 0; b < Dk.dim(); ++b) {
                int ell = D0.letters[a] + Dk.letters[b];
                if (ell > d) continue;
                C.bracket[k][a][b] = express(raw_bracket(D0.vectors[a], 0, Dk.vectors[b], -k), ell, k);
            }
        if (k == 0) continue;
        C.differential[k].resize(Dk.dim());
        for (int b = 0; b < Dk.dim(); ++b) {
            int ell = Dk.letters[b] + 1;
            if (ell > d) continue;
            C.differential[k][b] = express(raw_differential(Dk.vectors[b], ell), ell, k - 1);
        }
    }
    return C;
}

std::vector<std::string> NilpotentCrossedComplex::validate() const
{
    std::vector<std::string> bad;
    auto note = [&](const std::string& s) {
        if (bad.size() < 20) bad.push_back(s);
    };
    int depth = this->depth();
    int d0 = dim(0);
    // [a, row] for a row of degree −k
    auto br = [&](int a, const Row& r, int k) {
        std::map<int, Rational> acc;
        for (const auto& [j, c] : r) row_axpy(acc, c, bracket[k][a][j]);
        return acc;
    };
    // [row0, f_b] for a degree-0 row
    auto br_left = [&](const Row& r0, int b, int k) {
        std::map<int, Rational> acc;
        for (const auto& [j, c] : r0) row_axpy(acc, c, bracket[k][j][b]);
        return acc;
    };
    auto dmap = [&](const Row& r, int k) {
        std::map<int, Rational> acc;
        for (const auto& [j, c] : r) row_axpy(acc, c, differential[k][j]);
        return acc;
    };

    // degree-0 antisymmetry and Jacobi; the action is a representation of 𝔤⁰
    for (int a = 0; a < d0; ++a)
        for (int b = 0; b < d0; ++b) {
            std::map<int, Rational> s;
            row_axpy(s, 1, bracket[0][a][b]);
            row_axpy(s, 1, bracket[0][b][a]);
            if (!s.empty()) note("antisymmetry fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
    for (int k = 0; k <= depth; ++k)
        for (int a = 0; a < d0; ++a)
            for (int b = 0; b < d0; ++b) {
                for (int f = 0; f < dim(k); ++f) {
                    Row bf = bracket[k][b][f], af = bracket[k][a][f];
                    auto lhs = br(a, bf, k);
                    auto t = br(b, af, k);
                    for (auto& [j, c] : t) {
                        auto& x = lhs[j];
                        x -= c;
                        if (sgn(x) == 0) lhs.erase(j);
                    }
                    auto rhs = br_left(bracket[0][a][b], f, k);
                    if (lhs != rhs)
                        note("Jacobi/representation fails in degree " + std::to_string(-k) + " at (" + std::to_string(a) +
                             "," + std::to_string(b) + "," + std::to_string(f) + ")");
                }
            }
    for (int k = 1; k <= depth; ++k) {
        // d commutes with the action
        for (int a = 0; a < d0; ++a)
            for (int f = 0; f < dim(k); ++f)
                if (dmap(bracket[k][a][f], k) != br(a, differential[k][f], k - 1))
                    note("d is not equivariant in degree " + std::to_string(-k));
        // d ∘ d = 0
        if (k >= 2)
            for (int f = 0; f < dim(k); ++f)
                if (!dmap(differential[k][f], k - 1).empty()) note("d∘d ≠ 0 in degree " + std::to_string(-k));
    }
    if (depth >= 1) {
        // Peiffer: [dx, y] = −[dy, x] on 𝔤^{−1}
        for (int x = 0; x < dim(1); ++x)
            for (int y = 0; y < dim(1); ++y) {
                auto l = br_left(differential[1][x], y, 1);
                auto r = br_left(differential[1][y], x, 1);
                row_axpy(l, 1, to_row(r));
                if (!l.empty()) note("Peiffer identity fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
            }
        // below degree −1 the action of d𝔤^{−1} is trivial
        for (int k = 2; k <= depth; ++k)
            for (int x = 0; x < dim(1); ++x)
                for (int f = 0; f < dim(k); ++f)
                    if (!br_left(differential[1][x], f, k).empty())
                        note("action of d(g^-1) on degree " + std::to_string(-k) + " is not trivial");
    }
    return bad;
}

json crossed_complex_to_json(const NilpotentCrossedComplex& c)
{
    json j;
    j["n"] = c.n;
    j["class"] = c.cls;
    auto row_json = [](const Row& r) {
        json t = json::array();
        for (const auto& [k, q] : r) t.push_back(json::array({k, rational_to_json(q)}));
        return t;
    };
    j["degrees"] = json::array();
    for (int k = 0; k <= c.depth(); ++k) {
        const auto& D = c.degrees[k];
        json vecs = json::array();
        for (const auto& v : D.vectors) {
            json terms = json::array();
            for (const auto& [w, x] : v) terms.push_back(json::array({word_to_json(Word::from_bits(w)), x}));
            vecs.push_back(terms);
        }
        j["degrees"].push_back({{"i", -k}, {"dim", D.dim()}, {"labels", D.labels}, {"letters", D.letters}, {"vectors", vecs}});
    }
    j["bracket"] = json::array();
    for (int k = 0; k <= c.depth(); ++k)
        for (std::size_t a = 0; a < c.bracket[k].size(); ++a)
            for (std::size_t b = 0; b < c.bracket[k][a].size(); ++b)
                if (!c.bracket[k][a][b].empty())
                    j["bracket"].push_back({{"i", -k}, {"a", a}, {"b", b}, {"terms", row_json(c.bracket[k][a][b])}});
    j["differential"] = json::array();
    for (int k = 1; k <= c.depth(); ++k)
        for (std::size_t b = 0; b < c.differential[k].size(); ++b)
            if (!c.differential[k][b].empty())
                j["differential"].push_back({{"i", -k}, {"b", b}, {"terms", row_json(c.differential[k][b])}});
    return j;
}

NilpotentCrossedComplex crossed_complex_from_json(const json& j)
{
    NilpotentCrossedComplex c;
    try {
        c.n = j.at("n").get<int>();
        c.cls = j.at("class").get<int>();
        check_n(c.n);
        for (const auto& dj : j.at("degrees")) {
            int k = -dj.at("i").get<int>();
            if (k != static_cast<int>(c.degrees.size())) throw ConfigError("crossed complex JSON: degrees out of order");
            NilpotentCrossedComplex::Degree D;
            D.labels = dj.at("labels").get<std::vector<std::string>>();
            D.letters = dj.at("letters").get<std::vector<int>>();
            for (const auto& vj : dj.at("vectors")) {
                RawVec v;
                for (const auto& t : vj) v.push_back({word_from_json(t.at(0)).bits(), t.at(1).get<long long>()});
                raw_normalize(v);
                D.vectors.push_back(std::move(v));
            }
            if (dj.at("dim").get<int>() != D.dim() || D.letters.size() != D.labels.size() ||
                D.vectors.size() != D.labels.size())
                throw ConfigError("crossed complex JSON: inconsistent degree record");
            c.degrees.push_back(std::move(D));
        }
        if (c.degrees.empty()) throw ConfigError("crossed complex JSON: no degrees");
        int depth = c.depth();
        c.bracket.resize(depth + 1);
        c.differential.resize(depth + 1);
        for (int k = 0; k <= depth; ++k) {
            c.bracket[k].assign(c.dim(0), std::vector<Row>(c.dim(k)));
            if (k > 0) c.differential[k].resize(c.dim(k));
        }
        auto read_row = [&](const json& t, int target) {
            Row r;
            for (const auto& e : t) {
                int idx = e.at(0).get<int>();
                if (idx < 0 || idx >= c.dim(target)) throw ConfigError("crossed complex JSON: index out of range");
                r.push_back({idx, rational_from_json(e.at(1))});
            }
            std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            return r;
        };
        for (const auto& bj : j.at("bracket")) {
            int k = -bj.at("i").get<int>();
            int a = bj.at("a").get<int>(), b = bj.at("b").get<int>();
            if (k < 0 || k > depth || a < 0 || a >= c.dim(0) || b < 0 || b >= c.dim(k))
                throw ConfigError("crossed complex JSON: bracket entry out of range");
            c.bracket[k][a][b] = read_row(bj.at("terms"), k);
        }
        for (const auto& dj : j.at("differential")) {
            int k = -dj.at("i").get<int>();
            int b = dj.at("b").get<int>();
            if (k < 1 || k > depth || b < 0 || b >= c.dim(k)) throw ConfigError("crossed complex JSON: differential entry out of range");
            c.differential[k][b] = read_row(dj.at("terms"), k - 1);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("crossed complex JSON: ") + e.what());
    }
    return c;
}

}  // namespace dgl
