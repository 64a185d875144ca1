#pragma once

// Truncated graded tensor algebra on the letters Z_I.  A tensor is a sorted
// list of (word, coefficient) pairs with no zero coefficients; words longer
// than maxLetters are dropped on construction, which realizes the truncation
// ideal.

#include "dgl/scalar.hpp"
#include "dgl/word.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace dgl {

template <class S>
class BasicTensor {
public:
    using Term = std::pair<Word, S>;

    BasicTensor() = default;
    BasicTensor(int n, int max_letters) : n_(n), L_(max_letters)
    {
        if (n < 1 || n > kMaxN) throw ConfigError("tensor: n must be in 1..6");
        if (max_letters < 0 || max_letters > kMaxWordLetters) throw ConfigError("tensor: maxLetters must be in 0..10");
    }

    static BasicTensor unit(int n, int L) { BasicTensor t(n, L); t.terms_.push_back({Word{}, S(1)}); return t; }
    static BasicTensor letter(int n, int L, Letter c, const S& coeff = S(1))
    {
        BasicTensor t(n, L);
        if (!letter_fits(c, n)) throw ConfigError("tensor: letter uses an index above n");
        if (L >= 1 && !::dgl::is_zero(coeff)) t.terms_.push_back({Word::single(c), coeff});
        return t;
    }
    static BasicTensor word(int n, int L, Word w, const S& coeff = S(1))
    {
        BasicTensor t(n, L);
        if (w.size() <= L && !::dgl::is_zero(coeff)) t.terms_.push_back({w, coeff});
        return t;
    }
    // Builds from arbitrary (possibly repeated, unsorted) terms.
    static BasicTensor from_terms(int n, int L, std::vector<Term> terms)
    {
        BasicTensor t(n, L);
        t.terms_ = std::move(terms);
        if constexpr (std::is_same_v<S, Rational>)
            for (auto& x : t.terms_) x.second.canonicalize();
        t.normalize();
        return t;
    }

    int n() const { return n_; }
    int max_letters() const { return L_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    S coefficient(Word w) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                                   [](const Term& t, Word x) { return t.first < x; });
        if (it != terms_.end() && it->first == w) return it->second;
        return S(0);
    }
    S constant_term() const { return coefficient(Word{}); }

    // Cohomological degree if homogeneous.
    std::optional<int> homogeneous_degree() const
    {
        if (terms_.empty()) return 0;
        int d = terms_.front().first.degree();
        for (const auto& t : terms_)
            if (t.first.degree() != d) return std::nullopt;
        return d;
    }

    BasicTensor with_max_letters(int L) const
    {
        BasicTensor r(n_, L);
        for (const auto& t : terms_)
            if (t.first.size() <= L) r.terms_.push_back(t);
        return r;
    }
    // Part with exactly k letters.
    BasicTensor graded_part(int k) const
    {
        BasicTensor r(n_, L_);
        for (const auto& t : terms_)
            if (t.first.size() == k) r.terms_.push_back(t);
        return r;
    }

    BasicTensor& operator+=(const BasicTensor& b) { check_same(b); *this = merge(*this, b, S(1)); return *this; }
    BasicTensor& operator-=(const BasicTensor& b) { check_same(b); *this = merge(*this, b, S(-1)); return *this; }
    friend BasicTensor operator+(const BasicTensor& a, const BasicTensor& b) { a.check_same(b); return merge(a, b, S(1)); }
    friend BasicTensor operator-(const BasicTensor& a, const BasicTensor& b) { a.check_same(b); return merge(a, b, S(-1)); }
    BasicTensor operator-() const { return scaled(S(-1)); }

    BasicTensor scaled(const S& c) const
    {
        BasicTensor r(n_, L_);
        if (::dgl::is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.first, t.second * c});
        return r;
    }
    friend BasicTensor operator*(const S& c, const BasicTensor& a) { return a.scaled(c); }

    // Concatenation product (no Koszul sign).
    friend BasicTensor operator*(const BasicTensor& a, const BasicTensor& b)
    {
        a.check_same(b);
        BasicTensor r(a.n_, a.L_);
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_) {
            int lx = x.first.size();
            for (const auto& y : b.terms_) {
                if (lx + y.first.size() > a.L_) continue;
                out.push_back({x.first.concat(y.first), x.second * y.second});
            }
        }
        r.terms_ = std::move(out);
        r.normalize();
        return r;
    }

    friend bool operator==(const BasicTensor& a, const BasicTensor& b)
    {
        return a.n_ == b.n_ && a.L_ == b.L_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicTensor& a, const BasicTensor& b) { return !(a == b); }

    template <class T>
    BasicTensor<T> cast() const
    {
        BasicTensor<T> r(n_, L_);
        std::vector<typename BasicTensor<T>::Term> out;
        for (const auto& t : terms_) out.push_back({t.first, convert<T>(t.second)});
        return BasicTensor<T>::from_terms(n_, L_, std::move(out));
    }

    void check_same(const BasicTensor& b) const
    {
        if (n_ != b.n_ || L_ != b.L_) throw ConfigError("tensor: mismatched n or maxLetters");
    }

    void normalize()
    {
        std::erase_if(terms_, [this](const Term& t) { return t.first.size() > L_; });
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        std::size_t k = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            Word w = terms_[i].first;
            S acc = std::move(terms_[i].second);
            std::size_t j = i + 1;
            for (; j < terms_.size() && terms_[j].first == w; ++j) acc += terms_[j].second;
            if (!::dgl::is_zero(acc)) {
                terms_[k].first = w;
                terms_[k].second = std::move(acc);
                ++k;
            }
            i = j;
        }
        terms_.resize(k);
    }

private:
    template <class T, class U>
    static T convert(const U& u)
    {
        if constexpr (std::is_same_v<T, double> && std::is_same_v<U, Rational>) return u.get_d();
        else return T(u);
    }

    static BasicTensor merge(const BasicTensor& a, const BasicTensor& b, const S& cb)
    {
        BasicTensor r(a.n_, a.L_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back({b.terms_[j].first, b.terms_[j].second * cb});
                ++j;
            } else {
                S s = a.terms_[i].second + b.terms_[j].second * cb;
                if (!::dgl::is_zero(s)) r.terms_.push_back({a.terms_[i].first, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    int n_ = 1;
    int L_ = 0;
    std::vector<Term> terms_;
};

using Tensor = BasicTensor<Rational>;
using RealTensor = BasicTensor<double>;
using IntTensor = BasicTensor<long long>;

// ab − (−1)^{deg a·deg b} ba.  Inputs must be homogeneous.
template <class S>
BasicTensor<S> graded_commutator(const BasicTensor<S>& a, const BasicTensor<S>& b)
{
    auto da = a.homogeneous_degree();
    auto db = b.homogeneous_degree();
    if (!da || !db) throw DomainError("graded_commutator: inputs must be homogeneous in cohomological degree");
    BasicTensor<S> ab = a * b;
    BasicTensor<S> ba = b * a;
    if (sign_pow(static_cast<long>(*da) * *db) > 0) return ab - ba;
    return ab + ba;
}

template <class S>
BasicTensor<S> tensor_exp(const BasicTensor<S>& a)
{
    if (!is_zero(a.constant_term())) throw DomainError("exp: argument must have zero constant term");
    const int L = a.max_letters();
    BasicTensor<S> r = BasicTensor<S>::unit(a.n(), L);
    BasicTensor<S> p = r;
    for (int k = 1; k <= L; ++k) {
        p = (p * a).scaled(S(1) / S(k));
        if (p.is_zero()) break;
        r += p;
    }
    return r;
}

template <class S>
BasicTensor<S> tensor_log(const BasicTensor<S>& g)
{
    if (g.constant_term() != S(1)) throw DomainError("log: argument must have constant term 1");
    const int L = g.max_letters();
    BasicTensor<S> x = g - BasicTensor<S>::unit(g.n(), L);
    BasicTensor<S> r(g.n(), L);
    BasicTensor<S> p = x;
    for (int k = 1; k <= L && !p.is_zero(); ++k) {
        S c = S(k % 2 == 1 ? 1 : -1) / S(k);
        r += p.scaled(c);
        p = p * x;
    }
    return r;
}

// Graded shuffle of two words: sum over interleavings with the Koszul sign
// of the letters of v passing letters of u.
IntTensor shuffle_words(int n, int L, Word u, Word v);
Tensor shuffle(int n, int L, Word u, Word v);

struct GroupLikeReport {
    bool ok = false;
    bool exact = true;  // every residual exactly zero
    double max_residual = 0.0;
};

// Checks <g,u><g,v> = <g, u ш v> for all nonempty words u, v on the support
// alphabet of g with |u| + |v| <= L.
GroupLikeReport is_group_like(const Tensor& g);
GroupLikeReport is_group_like(const RealTensor& g, double tol);

}  // namespace dgl
