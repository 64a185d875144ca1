#include "dgl/nilpotent.hpp"

#include <cmath>
#include <functional>
#include <mutex>

namespace dgl {

namespace {

template <class S>
S from_rational(const Rational& q)
{
    if constexpr (std::is_same_v<S, double>) return q.get_d();
    else return q;
}

template <class S>
bool nonzero(const S& x)
{
    if constexpr (std::is_same_v<S, double>) return x != 0.0;
    else return sgn(x) != 0;
}

template <class S>
bool close(const S& a, const S& b, double tol)
{
    if constexpr (std::is_same_v<S, double>) return std::abs(a - b) <= tol * (1 + std::abs(a));
    else return a == b;
}

}  // namespace

const std::vector<std::pair<std::vector<int>, Rational>>& dynkin_terms(int cls)
{
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<std::vector<int>, Rational>>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(cls);
    if (it != cache.end()) return it->second;
    std::map<std::vector<int>, Rational> acc;
    std::vector<int> word;
    // pairs (r_j, s_j) with r_j + s_j ≥ 1; coefficient (−1)^{n−1}/n · 1/(m Π r_j! s_j!)
    std::function<void(int, int, Integer)> rec = [&](int npairs, int m, Integer fact) {
        if (npairs > 0 && m > 0) {
            if (m == 1 || word[m - 1] != word[m - 2]) {
                Rational c(npairs % 2 == 1 ? 1 : -1, 1);
                c /= Rational(Integer(npairs) * Integer(m) * fact);
                acc[word] += c;
            }
        }
        for (int r = 0; m + r <= cls; ++r)
            for (int s = 0; m + r + s <= cls; ++s) {
                if (r + s == 0) continue;
                Integer f = fact;
                for (int k = 2; k <= r; ++k) f *= k;
                for (int k = 2; k <= s; ++k) f *= k;
                for (int k = 0; k < r; ++k) word.push_back(0);
                for (int k = 0; k < s; ++k) word.push_back(1);
                rec(npairs + 1, m + r + s, f);
                word.resize(m);
            }
    };
    rec(0, 0, Integer(1));
    std::vector<std::pair<std::vector<int>, Rational>> out;
    for (auto& [w, c] : acc) {
        c.canonicalize();
        if (sgn(c) != 0) out.push_back({w, c});
    }
    return cache.emplace(cls, std::move(out)).first->second;
}

template <class S>
BasicCrossedGroups<S>::BasicCrossedGroups(const NilpotentCrossedComplex& c) : c_(c)
{
    auto conv = [](const NilpotentCrossedComplex::Row& r) {
        SRow s;
        for (const auto& [k, q] : r) s.push_back({k, from_rational<S>(q)});
        return s;
    };
    br_.resize(c_.bracket.size());
    for (std::size_t k = 0; k < c_.bracket.size(); ++k) {
        br_[k].resize(c_.bracket[k].size());
        for (std::size_t a = 0; a < c_.bracket[k].size(); ++a)
            for (const auto& r : c_.bracket[k][a]) br_[k][a].push_back(conv(r));
    }
    dif_.resize(c_.differential.size());
    for (std::size_t k = 0; k < c_.differential.size(); ++k)
        for (const auto& r : c_.differential[k]) dif_[k].push_back(conv(r));
    for (const auto& [w, q] : dynkin_terms(c_.cls)) dyn_.push_back({w, from_rational<S>(q)});
}

template <class S>
typename BasicCrossedGroups<S>::Vec BasicCrossedGroups<S>::ad(const Vec& u, int k, const Vec& g) const
{
    Vec r(dim(k), S(0));
    if (r.empty()) return r;
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (!nonzero(u[a])) continue;
        for (std::size_t b = 0; b < g.size(); ++b) {
            if (!nonzero(g[b])) continue;
            S ab = u[a] * g[b];
            for (const auto& [j, c] : br_[k][a][b]) r[j] += ab * c;
        }
    }
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Vec BasicCrossedGroups<S>::d(int k, const Vec& x) const
{
    if (k < 1) throw DomainError("d: degree out of range");
    Vec r(dim(k - 1), S(0));
    if (k > depth()) return r;  // trivial groups below the top degree
    for (std::size_t b = 0; b < x.size(); ++b) {
        if (!nonzero(x[b])) continue;
        for (const auto& [j, c] : dif_[k][b]) r[j] += x[b] * c;
    }
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Vec BasicCrossedGroups<S>::lie_bracket(int k, const Vec& x, const Vec& y) const
{
    if (k == 0) return ad(x, 0, y);
    if (k == 1) return ad(d(1, x), 1, y);
    return Vec(dim(k), S(0));
}

template <class S>
typename BasicCrossedGroups<S>::Vec BasicCrossedGroups<S>::bch(int k, const Vec& x, const Vec& y) const
{
    if (x.size() != static_cast<std::size_t>(dim(k)) || y.size() != static_cast<std::size_t>(dim(k)))
        throw ConfigError("bch: coordinate vector has the wrong length");
    Vec r(dim(k), S(0));
    if (k >= 2) {
        for (int j = 0; j < dim(k); ++j) r[j] = x[j] + y[j];
        return r;
    }
    // right-nested values share suffixes; evaluate each word from the inside out
    std::map<std::vector<int>, Vec> memo;
    std::function<const Vec&(const std::vector<int>&, std::size_t)> val = [&](const std::vector<int>& w,
                                                                              std::size_t from) -> const Vec& {
        std::vector<int> key(w.begin() + from, w.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Vec v;
        if (from + 1 == w.size()) v = w[from] == 0 ? x : y;
        else v = lie_bracket(k, w[from] == 0 ? x : y, val(w, from + 1));
        return memo.emplace(std::move(key), std::move(v)).first->second;
    };
    for (const auto& [w, c] : dyn_) {
        const Vec& v = val(w, 0);
        for (int j = 0; j < dim(k); ++j)
            if (nonzero(v[j])) r[j] += c * v[j];
    }
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Vec BasicCrossedGroups<S>::exp_ad(const Vec& u, int k, const Vec& g) const
{
    Vec r = g, term = g;
    for (int j = 1; j <= cls(); ++j) {
        term = ad(u, k, term);
        bool any = false;
        for (auto& t : term) {
            t /= S(j);
            any = any || nonzero(t);
        }
        if (!any) break;
        for (int b = 0; b < dim(k); ++b) r[b] += term[b];
    }
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Elem BasicCrossedGroups<S>::identity(int k) const
{
    if (k < 0) throw DomainError("identity: degree out of range");
    return Elem{-k, Vec(dim(k), S(0))};
}

template <class S>
typename BasicCrossedGroups<S>::Elem BasicCrossedGroups<S>::mul(const Elem& a, const Elem& b) const
{
    if (a.degree != b.degree) throw ConfigError("mul: degrees differ");
    return Elem{a.degree, bch(-a.degree, a.coords, b.coords)};
}

template <class S>
typename BasicCrossedGroups<S>::Elem BasicCrossedGroups<S>::inv(const Elem& a) const
{
    Elem r = a;
    for (auto& x : r.coords) x = -x;
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Elem BasicCrossedGroups<S>::boundary(const Elem& g) const
{
    int k = -g.degree;
    if (k < 1) throw DomainError("boundary: needs degree ≤ −1");
    return Elem{g.degree + 1, d(k, g.coords)};
}

template <class S>
typename BasicCrossedGroups<S>::Elem BasicCrossedGroups<S>::act(const Elem& u, const Elem& g) const
{
    if (u.degree != 0) throw ConfigError("act: the acting element must have degree 0");
    return Elem{g.degree, exp_ad(u.coords, -g.degree, g.coords)};
}

template <class S>
bool BasicCrossedGroups<S>::equal(const Elem& a, const Elem& b, double tol) const
{
    if (a.degree != b.degree || a.coords.size() != b.coords.size()) return false;
    for (std::size_t j = 0; j < a.coords.size(); ++j)
        if (!close(a.coords[j], b.coords[j], tol)) return false;
    return true;
}

template <class S>
typename BasicCrossedGroups<S>::Morph BasicCrossedGroups<S>::unit(const Morph& x) const
{
    Morph r = x;
    r.comps.push_back(identity(x.dim()));
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Morph BasicCrossedGroups<S>::source(const Morph& x) const
{
    if (x.dim() < 1) throw DomainError("source: needs a morphism of dimension ≥ 1");
    Morph r = x;
    r.comps.pop_back();
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Morph BasicCrossedGroups<S>::target(const Morph& x) const
{
    int m = x.dim();
    if (m < 1) throw DomainError("target: needs a morphism of dimension ≥ 1");
    Morph r = source(x);
    if (m >= 2) r.comps[m - 2] = mul(boundary(x.comps[m - 1]), x.comps[m - 2]);
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Morph BasicCrossedGroups<S>::source(const Morph& x, int i) const
{
    Morph r = x;
    while (r.dim() > i) r = source(r);
    return r;
}

template <class S>
typename BasicCrossedGroups<S>::Morph BasicCrossedGroups<S>::target(const Morph& x, int i) const
{
    Morph r = x;
    while (r.dim() > i) r = target(r);
    return r;
}

template <class S>
bool BasicCrossedGroups<S>::equal(const Morph& a, const Morph& b, double tol) const
{
    if (a.dim() != b.dim()) return false;
    for (int k = 0; k < a.dim(); ++k)
        if (!equal(a.comps[k], b.comps[k], tol)) return false;
    return true;
}

template <class S>
typename BasicCrossedGroups<S>::Morph BasicCrossedGroups<S>::compose(const Morph& x, const Morph& y, int i, double tol) const
{
    int m = x.dim();
    if (y.dim() != m || i < 0 || i >= m) throw ConfigError("compose: dimensions do not allow *_i");
    if (!equal(source(x, i), target(y, i), tol)) throw DomainError("compose: s_i(x) ≠ t_i(y)");
    Morph r;
    r.comps.resize(m);
    if (i == 0) {
        const Elem& g0 = x.comps[0];
        for (int k = 1; k < m; ++k) r.comps[k] = mul(x.comps[k], act(g0, y.comps[k]));
        r.comps[0] = mul(g0, y.comps[0]);
    } else {
        for (int k = 0; k < m; ++k) r.comps[k] = k >= i ? mul(x.comps[k], y.comps[k]) : y.comps[k];
    }
    return r;
}

template class BasicCrossedGroups<Rational>;
template class BasicCrossedGroups<double>;

Tensor realize_degree0(const NilpotentCrossedComplex& c, const std::vector<Rational>& x)
{
    std::vector<Tensor::Term> terms;
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (sgn(x[a]) == 0) continue;
        for (const auto& [w, v] : c.degrees[0].vectors[a])
            terms.push_back({Word::from_bits(w), x[a] * Rational(static_cast<long>(v))});
    }
    return Tensor::from_terms(c.n, c.cls, std::move(terms));
}

RealTensor realize_degree0(const NilpotentCrossedComplex& c, const std::vector<double>& x)
{
    std::vector<RealTensor::Term> terms;
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a] == 0) continue;
        for (const auto& [w, v] : c.degrees[0].vectors[a]) terms.push_back({Word::from_bits(w), x[a] * static_cast<double>(v)});
    }
    return RealTensor::from_terms(c.n, c.cls, std::move(terms));
}

json group_element_to_json(const GroupElement& g)
{
    json c = json::array();
    for (const auto& q : g.coords) c.push_back(rational_to_json(q));
    return {{"degree", g.degree}, {"coords", c}};
}

json group_element_to_json(const RealGroupElement& g) { return {{"degree", g.degree}, {"coords", g.coords}}; }

GroupElement group_element_from_json(const json& j)
{
    try {
        GroupElement g;
        g.degree = j.at("degree").get<int>();
        if (g.degree > 0) throw ConfigError("group element JSON: degree must be ≤ 0");
        for (const auto& q : j.at("coords")) g.coords.push_back(rational_from_json(q));
        return g;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("group element JSON: ") + e.what());
    }
}

}  // namespace dgl
