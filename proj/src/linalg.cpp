#include "dgl/linalg.hpp"

#include <algorithm>

namespace dgl {

namespace {

// a·x − b·y on sorted sparse integer vectors.
SparseVec combine(const Integer& a, const SparseVec& x, const Integer& b, const SparseVec& y)
{
    SparseVec r;
    r.e.reserve(x.e.size() + y.e.size());
    std::size_t i = 0, j = 0;
    while (i < x.e.size() || j < y.e.size()) {
        if (j == y.e.size() || (i < x.e.size() && x.e[i].first < y.e[j].first)) {
            r.e.push_back({x.e[i].first, a * x.e[i].second});
            ++i;
        } else if (i == x.e.size() || y.e[j].first < x.e[i].first) {
            r.e.push_back({y.e[j].first, -b * y.e[j].second});
            ++j;
        } else {
            Integer s = a * x.e[i].second - b * y.e[j].second;
            if (sgn(s) != 0) r.e.push_back({x.e[i].first, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}

using RVec = QuotientReducer::RVec;

// x − c·y.
RVec axpy(const RVec& x, const Rational& c, const RVec& y)
{
    RVec r;
    r.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.push_back({y[j].first, -c * y[j].second});
            ++j;
        } else {
            Rational s = x[i].second - c * y[j].second;
            if (sgn(s) != 0) r.push_back({x[i].first, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}

void normalize(RVec& v)
{
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i + 1;
        Rational acc = v[i].second;
        for (; j < v.size() && v[j].first == v[i].first; ++j) acc += v[j].second;
        if (sgn(acc) != 0) {
            v[k].first = v[i].first;
            v[k].second = acc;
            ++k;
        }
        i = j;
    }
    v.resize(k);
}

}  // namespace

void make_primitive(SparseVec& v)
{
    if (v.e.empty()) return;
    Integer g = 0;
    for (const auto& [c, x] : v.e) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (sgn(v.e.front().second) < 0) g = -g;
    if (g != 1)
        for (auto& [c, x] : v.e) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Rational make_primitive(std::vector<std::pair<std::uint64_t, Rational>> v, SparseVec& out)
{
    normalize(v);
    out.e.clear();
    if (v.empty()) return Rational(0);
    Integer den = 1;
    for (const auto& [c, x] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    out.e.reserve(v.size());
    for (const auto& [c, x] : v) {
        Rational y = x * den;
        out.e.push_back({c, y.get_num()});
    }
    Integer g = 0;
    for (const auto& [c, x] : out.e) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (sgn(out.e.front().second) < 0) g = -g;
    for (auto& [c, x] : out.e) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return Rational(g) / Rational(den);
}

void Echelon::reduce_leading(SparseVec& v) const
{
    while (!v.e.empty()) {
        auto it = pivot_.find(v.e.front().first);
        if (it == pivot_.end()) return;
        const SparseVec& row = rows_[it->second];
        // row is primitive with positive lead; fraction-free elimination.
        Integer p = row.e.front().second;
        Integer q = v.e.front().second;
        Integer g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t());
        v = combine(p, v, q, row);
        make_primitive(v);
    }
}

bool Echelon::insert(SparseVec v)
{
    make_primitive(v);
    reduce_leading(v);
    if (v.e.empty()) return false;
    pivot_[v.e.front().first] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
}

bool Echelon::in_span(SparseVec v) const
{
    make_primitive(v);
    reduce_leading(v);
    return v.e.empty();
}

void QuotientReducer::reduce(RVec& v, std::vector<Rational>& cert) const
{
    std::size_t i = 0;
    while (i < v.size()) {
        auto it = pivot_.find(v[i].first);
        if (it == pivot_.end()) {
            ++i;
            continue;
        }
        const Row& row = rows_[it->second];
        Rational c = v[i].second;
        v = axpy(v, c, row.v);
        for (std::size_t k = 0; k < row.cert.size(); ++k)
            if (sgn(row.cert[k]) != 0) cert[k] -= c * row.cert[k];
    }
}

bool QuotientReducer::insert(RVec v, std::vector<Rational> cert)
{
    reduce(v, cert);
    if (v.empty()) return false;
    Rational lead = v.front().second;
    for (auto& [c, x] : v) x /= lead;
    for (auto& x : cert) x /= lead;
    pivot_[v.front().first] = rows_.size();
    rows_.push_back({std::move(v), std::move(cert)});
    return true;
}

bool QuotientReducer::add_relation(const RVec& r)
{
    if (nbasis_ > 0) throw std::logic_error("QuotientReducer: relations must precede basis candidates");
    RVec v = r;
    normalize(v);
    bool ok = insert(std::move(v), {});
    if (ok) ++rel_rank_;
    return ok;
}

int QuotientReducer::add_basis_candidate(const RVec& b)
{
    RVec v = b;
    normalize(v);
    std::vector<Rational> cert(nbasis_ + 1);
    cert[nbasis_] = 1;
    // Old rows carry shorter certificates; reduce() only touches their length.
    if (!insert(std::move(v), std::move(cert))) return -1;
    return static_cast<int>(nbasis_++);
}

std::vector<Rational> QuotientReducer::coordinates(const RVec& x) const
{
    RVec v = x;
    normalize(v);
    std::vector<Rational> cert(nbasis_);
    reduce(v, cert);
    if (!v.empty()) throw DomainError("QuotientReducer: vector outside relations + basis span");
    for (auto& c : cert) c = -c;
    return cert;
}

bool QuotientReducer::is_relation(const RVec& x) const
{
    auto c = coordinates(x);
    return std::all_of(c.begin(), c.end(), [](const Rational& q) { return sgn(q) == 0; });
}

}  // namespace dgl
