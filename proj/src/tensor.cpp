#include "dgl/tensor.hpp"

#include <functional>
#include <map>
#include <set>

namespace dgl {

Rational parse_rational(const std::string& s)
{
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + s + "'");
    q.canonicalize();
    return q;
}

IntTensor shuffle_words(int n, int L, Word u, Word v)
{
    std::vector<IntTensor::Term> out;
    const int r = u.size(), s = v.size();
    // i letters of u and j letters of v used; sign tracks Koszul swaps.
    std::function<void(int, int, Word, int)> rec = [&](int i, int j, Word acc, int sign) {
        if (i == r && j == s) {
            out.push_back({acc, sign});
            return;
        }
        if (i < r) {
            Word a = acc;
            a.push_back(u[i]);
            rec(i + 1, j, a, sign);
        }
        if (j < s) {
            // v[j] moves in front of the remaining u[i..r).
            int e = 0;
            for (int k = i; k < r; ++k) e += letter_degree(u[k]) * letter_degree(v[j]);
            Word a = acc;
            a.push_back(v[j]);
            rec(i, j + 1, a, sign * sign_pow(e));
        }
    };
    if (r + s <= L) rec(0, 0, Word{}, 1);
    return IntTensor::from_terms(n, L, std::move(out));
}

Tensor shuffle(int n, int L, Word u, Word v)
{
    IntTensor t = shuffle_words(n, L, u, v);
    std::vector<Tensor::Term> out;
    for (const auto& [w, c] : t.terms()) out.push_back({w, Rational(static_cast<long>(c))});
    return Tensor::from_terms(n, L, std::move(out));
}

namespace {

template <class S, class Residual>
GroupLikeReport group_like_impl(const BasicTensor<S>& g, Residual residual_of)
{
    GroupLikeReport rep;
    if (g.constant_term() != S(1)) {
        rep.exact = false;
        rep.max_residual = 1.0;
        return rep;
    }
    std::set<Letter> support;
    for (const auto& [w, c] : g.terms())
        for (int k = 0; k < w.size(); ++k) support.insert(w[k]);
    const int L = g.max_letters();
    std::vector<Letter> alph(support.begin(), support.end());
    std::vector<std::vector<Word>> by_len(L + 1);
    by_len[0].push_back(Word{});
    for (int len = 1; len <= L; ++len)
        for (Word w : by_len[len - 1])
            for (Letter c : alph) {
                Word x = w;
                x.push_back(c);
                by_len[len].push_back(x);
            }
    double worst = 0.0;
    for (int a = 1; a < L; ++a)
        for (int b = 1; a + b <= L; ++b)
            for (Word u : by_len[a])
                for (Word v : by_len[b]) {
                    S lhs = g.coefficient(u) * g.coefficient(v);
                    IntTensor sh = shuffle_words(g.n(), L, u, v);
                    S rhs(0);
                    for (const auto& [w, c] : sh.terms()) rhs += S(static_cast<long>(c)) * g.coefficient(w);
                    S diff = lhs - rhs;
                    if (!::dgl::is_zero(diff)) rep.exact = false;
                    worst = std::max(worst, residual_of(diff));
                }
    rep.max_residual = worst;
    rep.ok = true;
    return rep;
}

}  // namespace

GroupLikeReport is_group_like(const Tensor& g)
{
    auto rep = group_like_impl(g, [](const Rational& r) { return std::abs(r.get_d()); });
    if (rep.ok) rep.ok = rep.exact;
    return rep;
}

GroupLikeReport is_group_like(const RealTensor& g, double tol)
{
    auto rep = group_like_impl(g, [](double r) { return std::abs(r); });
    if (rep.ok) rep.ok = rep.max_residual <= tol;
    return rep;
}

}  // namespace dgl
