#include "dgl/holonomy.hpp"

#include "dgl/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace dgl {

namespace {

// Gauss–Legendre on [0,1]
constexpr double kG3x[3] = {0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
constexpr double kG3w[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};
constexpr double kG2x[2] = {0.5 - 0.28867513459481287, 0.5 + 0.28867513459481287};

double max_abs(const std::vector<double>& v)
{
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> diff(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

double det(std::vector<std::vector<double>> m)
{
    const int p = static_cast<int>(m.size());
    double r = 1;
    for (int c = 0; c < p; ++c) {
        int piv = c;
        for (int i = c + 1; i < p; ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
        if (m[piv][c] == 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            r = -r;
        }
        r *= m[c][c];
        for (int i = c + 1; i < p; ++i) {
            double f = m[i][c] / m[c][c];
            for (int k = c; k < p; ++k) m[i][k] -= f * m[c][k];
        }
    }
    return r;
}

void subsets_rec(int n, int p, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == p) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets_rec(n, p, i + 1, cur, out);
        cur.pop_back();
    }
}

Letter coordinate_letter(int i) { return letter_from_indices({i + 1}); }

template <class T, class S>
T tensor_signature(const std::vector<std::vector<S>>& pts, int n, int d, ChenOrder order)
{
    if (d < 1 || d > 8) throw ConfigError("signature: truncation degree must be in 1..8");
    T m = T::unit(n, d);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        std::vector<typename T::Term> terms;
        for (int i = 0; i < n; ++i) {
            S dx = pts[k][i] - pts[k - 1][i];
            if (!is_zero(dx)) terms.push_back({Word::single(coordinate_letter(i)), dx});
        }
        if (terms.empty()) continue;
        T e = tensor_exp(T::from_terms(n, d, std::move(terms)));
        m = order == ChenOrder::EarlierLeft ? m * e : e * m;
    }
    return m;
}

template <class S>
void check_path(const BasicPLPath<S>& g)
{
    if (g.n < 1) throw ConfigError("path: n must be positive");
    if (g.points.empty()) throw ConfigError("path: at least one point is required");
    for (const auto& p : g.points)
        if (static_cast<int>(p.size()) != g.n) throw ConfigError("path: point of the wrong dimension");
}

}  // namespace

// --- SampledBrane ---------------------------------------------------------

std::size_t SampledBrane::size() const
{
    std::size_t s = 1;
    for (int k : shape) s *= static_cast<std::size_t>(k);
    return s;
}

std::size_t SampledBrane::flat(const std::vector<int>& idx) const
{
    std::size_t f = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) f = f * shape[k] + idx[k];
    return f;
}

Point SampledBrane::at(const std::vector<int>& idx) const
{
    const double* q = ptr(flat(idx));
    return Point(q, q + n);
}

SampledBrane SampledBrane::slice(int i0) const
{
    SampledBrane s;
    s.n = n;
    s.p = p - 1;
    s.shape.assign(shape.begin() + 1, shape.end());
    std::size_t block = s.size() * n;
    s.points.assign(points.begin() + i0 * block, points.begin() + (i0 + 1) * block);
    return s;
}

void check_globe(const SampledBrane& b, double tol)
{
    if (b.n < 1 || b.p < 1 || static_cast<int>(b.shape.size()) != b.p) throw ConfigError("brane: bad shape");
    for (int k : b.shape)
        if (k < 2) throw DomainError("brane: degenerate grid (fewer than 2 samples along an axis)");
    if (b.points.size() != b.size() * b.n) throw ConfigError("brane: point count does not match the shape");
    double scale = 1;
    for (double x : b.points) scale = std::max(scale, std::abs(x));
    const double eps = tol * scale;
    std::vector<int> idx(b.p, 0);
    for (std::size_t f = 0; f < b.size(); ++f) {
        std::size_t r = f;
        for (int k = b.p - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(r % b.shape[k]);
            r /= b.shape[k];
        }
        // the first axis from the outside that sits on a face decides what the sample must equal
        for (int j = 0; j < b.p; ++j) {
            if (idx[j] != 0 && idx[j] != b.shape[j] - 1) continue;
            std::vector<int> ref = idx;
            for (int o = 0; o < j; ++o) ref[o] = 0;
            const double* x = b.ptr(f);
            const double* y = b.ptr(b.flat(ref));
            for (int c = 0; c < b.n; ++c)
                if (std::abs(x[c] - y[c]) > eps) throw DomainError("brane: globe condition violated on a face");
        }
    }
}

// --- JSON -----------------------------------------------------------------

json path_to_json(const PLPath& g) { return json{{"n", g.n}, {"points", g.points}}; }

PLPath path_from_json(const json& j)
{
    PLPath g;
    try {
        g.n = j.at("n").get<int>();
        g.points = j.at("points").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("path JSON: ") + e.what());
    }
    check_path(g);
    return g;
}

json brane_to_json(const SampledBrane& b)
{
    if (b.p == 2) {
        json grid = json::array();
        for (int s = 0; s < b.shape[0]; ++s) {
            json row = json::array();
            for (int t = 0; t < b.shape[1]; ++t) row.push_back(b.at({s, t}));
            grid.push_back(row);
        }
        return json{{"n", b.n}, {"p", 2}, {"grid", grid}};
    }
    json pts = json::array();
    for (std::size_t f = 0; f < b.size(); ++f) pts.push_back(Point(b.ptr(f), b.ptr(f) + b.n));
    return json{{"n", b.n}, {"p", b.p}, {"shape", b.shape}, {"points", pts}};
}

SampledBrane brane_from_json(const json& j)
{
    SampledBrane b;
    try {
        b.n = j.at("n").get<int>();
        b.p = j.at("p").get<int>();
        if (b.p == 2 && j.contains("grid")) {
            auto grid = j.at("grid").get<std::vector<std::vector<std::vector<double>>>>();
            if (grid.empty()) throw ConfigError("surface JSON: empty grid");
            b.shape = {static_cast<int>(grid.size()), static_cast<int>(grid[0].size())};
            for (const auto& row : grid) {
                if (row.size() != grid[0].size()) throw ConfigError("surface JSON: ragged grid");
                for (const auto& q : row) {
                    if (static_cast<int>(q.size()) != b.n) throw ConfigError("surface JSON: point of the wrong dimension");
                    b.points.insert(b.points.end(), q.begin(), q.end());
                }
            }
        } else {
            b.shape = j.at("shape").get<std::vector<int>>();
            for (const auto& q : j.at("points")) {
                if (q.is_number()) {
                    b.points.push_back(q.get<double>());
                    continue;
                }
                auto v = q.get<std::vector<double>>();
                if (static_cast<int>(v.size()) != b.n) throw ConfigError("brane JSON: point of the wrong dimension");
                b.points.insert(b.points.end(), v.begin(), v.end());
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("brane JSON: ") + e.what());
    }
    if (static_cast<int>(b.shape.size()) != b.p) throw ConfigError("brane JSON: shape length must equal p");
    if (b.points.size() != b.size() * static_cast<std::size_t>(b.n))
        throw ConfigError("brane JSON: point count does not match the shape");
    return b;
}

json holonomy_result_to_json(const HolonomyResult& r, const NilpotentCrossedComplex& c)
{
    const int k = -r.value.degree;
    json out = group_element_to_json(r.value);
    out["d"] = r.d;
    out["step"] = r.step;
    out["diagnostics"] = r.diagnostics;
    if (k < static_cast<int>(c.degrees.size())) {
        out["labels"] = c.degrees[k].labels;
        std::map<std::uint64_t, double> acc;
        for (std::size_t b = 0; b < r.value.coords.size(); ++b)
            for (const auto& [w, v] : c.degrees[k].vectors[b]) acc[w] += r.value.coords[b] * static_cast<double>(v);
        json terms = json::array();
        for (const auto& [w, v] : acc)
            if (v != 0) terms.push_back(json::array({word_to_json(Word::from_bits(w)), v}));
        out["terms"] = terms;
    }
    return out;
}

// --- signatures -----------------------------------------------------------

RealTensor signature_tensor(const PLPath& g, int d, ChenOrder order)
{
    check_path(g);
    return tensor_signature<RealTensor>(g.points, g.n, d, order);
}

Tensor signature_tensor(const ExactPLPath& g, int d, ChenOrder order)
{
    check_path(g);
    return tensor_signature<Tensor>(g.points, g.n, d, order);
}

RealTensor signature_quadrature(const PLPath& g, int d, int steps)
{
    check_path(g);
    const int segs = static_cast<int>(g.points.size()) - 1;
    RealTensor m = RealTensor::unit(g.n, d);
    if (segs == 0) return m;
    const int per = std::max(1, (steps + segs - 1) / segs);
    const double h = 1.0 / per;
    for (int k = 0; k < segs; ++k) {
        std::vector<RealTensor::Term> terms;
        for (int i = 0; i < g.n; ++i) {
            double v = g.points[k + 1][i] - g.points[k][i];
            if (v != 0) terms.push_back({Word::single(coordinate_letter(i)), v});
        }
        RealTensor a = RealTensor::from_terms(g.n, d, std::move(terms));
        for (int st = 0; st < per; ++st) {
            RealTensor k1 = m * a;
            RealTensor k2 = (m + (h / 2) * k1) * a;
            RealTensor k3 = (m + (h / 2) * k2) * a;
            RealTensor k4 = (m + h * k3) * a;
            m = m + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return m;
}

PLPath sample_path(const std::function<Point(double)>& f, int n, int samples)
{
    if (samples < 2) throw ConfigError("sample_path: at least 2 samples");
    PLPath g{n, {}};
    for (int a = 0; a < samples; ++a) g.points.push_back(f(static_cast<double>(a) / (samples - 1)));
    check_path(g);
    return g;
}

SampledBrane sample_surface(const std::function<Point(double, double)>& f, int n, int rows, int cols)
{
    if (rows < 2 || cols < 2) throw DomainError("sample_surface: degenerate grid");
    SampledBrane b{n, 2, {rows, cols}, {}};
    b.points.reserve(static_cast<std::size_t>(rows) * cols * n);
    for (int s = 0; s < rows; ++s)
        for (int t = 0; t < cols; ++t) {
            Point q = f(static_cast<double>(s) / (rows - 1), static_cast<double>(t) / (cols - 1));
            b.points.insert(b.points.end(), q.begin(), q.end());
        }
    return b;
}

SampledBrane sample_brane3(const std::function<Point(double, double, double)>& f, int n, int N0, int N1, int N2)
{
    if (N0 < 2 || N1 < 2 || N2 < 2) throw DomainError("sample_brane3: degenerate grid");
    SampledBrane b{n, 3, {N0, N1, N2}, {}};
    for (int u = 0; u < N0; ++u)
        for (int s = 0; s < N1; ++s)
            for (int t = 0; t < N2; ++t) {
                Point q = f(static_cast<double>(u) / (N0 - 1), static_cast<double>(s) / (N1 - 1),
                            static_cast<double>(t) / (N2 - 1));
                b.points.insert(b.points.end(), q.begin(), q.end());
            }
    return b;
}

// --- constructions --------------------------------------------------------

SampledBrane stack_surfaces(const SampledBrane& later, const SampledBrane& first)
{
    if (later.p != 2 || first.p != 2 || later.n != first.n || later.cols() != first.cols())
        throw ConfigError("stack_surfaces: incompatible surfaces");
    const std::size_t row = static_cast<std::size_t>(first.cols()) * first.n;
    for (std::size_t c = 0; c < row; ++c)
        if (std::abs(first.points[first.points.size() - row + c] - later.points[c]) > 1e-9)
            throw DomainError("stack_surfaces: the last path of the first surface is not the first path of the other");
    SampledBrane s = first;
    s.points.insert(s.points.end(), later.points.begin() + row, later.points.end());
    s.shape[0] = first.rows() + later.rows() - 1;
    return s;
}

SampledBrane append_path(const SampledBrane& s, const PLPath& g)
{
    if (s.p != 2 || g.n != s.n) throw ConfigError("append_path: dimension mismatch");
    Point end = s.at({0, s.cols() - 1});
    for (int c = 0; c < s.n; ++c)
        if (std::abs(end[c] - g.points.front()[c]) > 1e-9) throw DomainError("append_path: path does not start at the target");
    const int extra = static_cast<int>(g.points.size()) - 1;
    SampledBrane r{s.n, 2, {s.rows(), s.cols() + extra}, {}};
    for (int a = 0; a < s.rows(); ++a) {
        for (int t = 0; t < s.cols(); ++t) {
            const double* q = s.ptr(s.flat({a, t}));
            r.points.insert(r.points.end(), q, q + s.n);
        }
        for (int k = 1; k <= extra; ++k) r.points.insert(r.points.end(), g.points[k].begin(), g.points[k].end());
    }
    return r;
}

SampledBrane prepend_path(const PLPath& g, const SampledBrane& s)
{
    if (s.p != 2 || g.n != s.n) throw ConfigError("prepend_path: dimension mismatch");
    Point start = s.at({0, 0});
    for (int c = 0; c < s.n; ++c)
        if (std::abs(start[c] - g.points.back()[c]) > 1e-9) throw DomainError("prepend_path: path does not end at the source");
    const int extra = static_cast<int>(g.points.size()) - 1;
    SampledBrane r{s.n, 2, {s.rows(), s.cols() + extra}, {}};
    for (int a = 0; a < s.rows(); ++a) {
        for (int k = 0; k < extra; ++k) r.points.insert(r.points.end(), g.points[k].begin(), g.points[k].end());
        for (int t = 0; t < s.cols(); ++t) {
            const double* q = s.ptr(s.flat({a, t}));
            r.points.insert(r.points.end(), q, q + s.n);
        }
    }
    return r;
}

SampledBrane reverse_rows(const SampledBrane& s)
{
    SampledBrane r = s;
    const std::size_t block = s.size() / s.shape[0] * s.n;
    for (int a = 0; a < s.shape[0]; ++a)
        std::copy(s.points.begin() + (s.shape[0] - 1 - a) * block, s.points.begin() + (s.shape[0] - a) * block,
                  r.points.begin() + a * block);
    return r;
}

Point surface_value(const SampledBrane& s, double sp, double tp)
{
    double fs = std::clamp(sp, 0.0, 1.0) * (s.rows() - 1), ft = std::clamp(tp, 0.0, 1.0) * (s.cols() - 1);
    int a = std::min(static_cast<int>(fs), s.rows() - 2), b = std::min(static_cast<int>(ft), s.cols() - 2);
    double x = fs - a, y = ft - b;
    Point r(s.n, 0);
    const double* p00 = s.ptr(s.flat({a, b}));
    const double* p01 = s.ptr(s.flat({a, b + 1}));
    const double* p10 = s.ptr(s.flat({a + 1, b}));
    const double* p11 = s.ptr(s.flat({a + 1, b + 1}));
    for (int c = 0; c < s.n; ++c)
        r[c] = (1 - x) * (1 - y) * p00[c] + (1 - x) * y * p01[c] + x * (1 - y) * p10[c] + x * y * p11[c];
    return r;
}

SampledBrane coordinate_square(int n, int i, int j, int rows, int cols)
{
    if (i < 1 || j < 1 || i > n || j > n || i == j) throw ConfigError("coordinate_square: bad coordinate pair");
    if (cols % 2 == 0) throw ConfigError("coordinate_square: cols must be odd");
    return sample_surface(
        [&](double s, double t) {
            Point c(n, 0), e(n, 0);
            c[i - 1] = s;
            c[j - 1] = 1 - s;
            e[i - 1] = e[j - 1] = 1;
            Point q(n);
            for (int k = 0; k < n; ++k) q[k] = t <= 0.5 ? 2 * t * c[k] : c[k] + (2 * t - 1) * (e[k] - c[k]);
            return q;
        },
        n, rows, cols);
}

SampledBrane unit_cube_brane(int N0, int N1, int N2)
{
    if (N0 % 2 || N1 % 4 || N2 % 2 || N0 < 2 || N1 < 4 || N2 < 2)
        throw ConfigError("unit_cube_brane: interval counts must be even, even and divisible by 4");
    using V = std::array<double, 3>;
    const V P{1, 0, 0}, A{1, 1, 0}, B{0, 1, 0}, Q{0, 1, 1}, D{0, 0, 1}, E{1, 0, 1}, C{1, 1, 1};
    auto bil = [](const V& p00, const V& p10, const V& p01, const V& p11, double mu, double sg) {
        V r;
        for (int k = 0; k < 3; ++k)
            r[k] = (1 - sg) * ((1 - mu) * p00[k] + mu * p10[k]) + sg * ((1 - mu) * p01[k] + mu * p11[k]);
        return r;
    };
    // The far faces x=1, y=1, z=1 of the cube as a bigon from P to Q: the
    // cone from the origin over it is the cube, and the second leg of every
    // path stays inside those faces.
    auto w = [&](double u, double s) {
        bool left = u <= 0.5;
        double mu = left ? 2 * u : 2 * u - 1;
        if (s <= 0.25) {
            double sg = s / 0.25;
            return left ? bil(P, P, A, C, mu, sg) : bil(P, P, C, E, mu, sg);
        }
        if (s <= 0.75) {
            double sg = (s - 0.25) / 0.5;
            return left ? bil(A, C, B, Q, mu, sg) : bil(C, E, Q, D, mu, sg);
        }
        double sg = (s - 0.75) / 0.25;
        return left ? bil(B, Q, Q, Q, mu, sg) : bil(Q, D, Q, Q, mu, sg);
    };
    return sample_brane3(
        [&](double u, double s, double t) {
            V c = w(1 - u, s);  // orientation: +1 on Z₁₂₃
            Point q(3);
            for (int k = 0; k < 3; ++k) q[k] = t <= 0.5 ? 2 * t * c[k] : c[k] + (2 * t - 1) * (C[k] - c[k]);
            return q;
        },
        3, N0 + 1, N1 + 1, N2 + 1);
}

double smoothstep(double a) { return a * a * (3 - 2 * a); }

// --- engine ---------------------------------------------------------------

HolonomyEngine::HolonomyEngine(int n, int d) : HolonomyEngine(extract_structure_constants(n, d)) {}

HolonomyEngine::HolonomyEngine(const NilpotentCrossedComplex& c) : exact_(c), real_(c)
{
    form_index_.resize(c.n + 1);
    subsets_.resize(c.n + 1);
    for (int p = 1; p <= c.n; ++p) {
        std::vector<int> cur;
        subsets_rec(c.n, p, 0, cur, subsets_[p]);
        for (const auto& I : subsets_[p]) {
            std::vector<int> one;
            for (int i : I) one.push_back(i + 1);
            form_index_[p].push_back(c.letter_index(letter_from_indices(one)));
        }
    }
}

std::vector<double> HolonomyEngine::log_signature(const std::vector<Point>& nodes, ChenOrder order) const
{
    std::vector<double> L(real_.dim(0), 0.0);
    const auto& x1 = form_index_[1];
    for (std::size_t b = 1; b < nodes.size(); ++b) {
        std::vector<double> X(real_.dim(0), 0.0);
        bool any = false;
        for (int i = 0; i < n(); ++i) {
            X[x1[i]] = nodes[b][i] - nodes[b - 1][i];
            any = any || X[x1[i]] != 0;
        }
        if (!any) continue;
        L = order == ChenOrder::EarlierLeft ? real_.bch(0, L, X) : real_.bch(0, X, L);
    }
    return L;
}

RealGroupElement HolonomyEngine::signature_pl(const PLPath& g, ChenOrder order) const
{
    check_path(g);
    if (g.n != n()) throw ConfigError("signature: path dimension differs from the engine's n");
    return RealGroupElement{0, log_signature(g.points, order)};
}

GroupElement HolonomyEngine::signature_pl(const ExactPLPath& g, ChenOrder order) const
{
    check_path(g);
    if (g.n != n()) throw ConfigError("signature: path dimension differs from the engine's n");
    std::vector<Rational> L(exact_.dim(0), Rational(0));
    for (std::size_t b = 1; b < g.points.size(); ++b) {
        std::vector<Rational> X(exact_.dim(0), Rational(0));
        for (int i = 0; i < n(); ++i) {
            X[form_index_[1][i]] = g.points[b][i] - g.points[b - 1][i];
            X[form_index_[1][i]].canonicalize();
        }
        L = order == ChenOrder::EarlierLeft ? exact_.bch(0, L, X) : exact_.bch(0, X, L);
    }
    return GroupElement{0, L};
}

RealGroupElement HolonomyEngine::signature_sampled(const std::function<Point(double)>& f, int samples) const
{
    return signature_pl(sample_path(f, n(), samples));
}

std::vector<double> HolonomyEngine::transport_integral(const std::vector<Point>& path,
                                                       const std::vector<std::vector<Point>>& frames,
                                                       ChenOrder order) const
{
    const int p = static_cast<int>(frames.size()) + 1;
    const int k = p - 1;
    if (p > n() || k > real_.depth()) throw ConfigError("transport: form degree exceeds the truncation");
    const double sigma = order == ChenOrder::EarlierLeft ? 1.0 : -1.0;
    // A^p(v₁..v_{p−1}, Δ) with the t-slot last; the verbatim reading puts it first
    const double slot_sign = order == ChenOrder::EarlierLeft ? 1.0 : (k % 2 ? -1.0 : 1.0);
    const auto& subs = subsets_[p];
    const auto& idx = form_index_[p];
    const int dim = real_.dim(k);
    const int segs = static_cast<int>(path.size()) - 1;

    auto form_value = [&](const std::vector<Point>& cols) {
        std::vector<double> v(dim, 0.0);
        std::vector<std::vector<double>> m(p, std::vector<double>(p));
        for (std::size_t r = 0; r < subs.size(); ++r) {
            if (idx[r] < 0) continue;
            for (int a = 0; a < p; ++a)
                for (int c = 0; c < p; ++c) m[a][c] = cols[c][subs[r][a]];
            v[idx[r]] += slot_sign * det(m);
        }
        return v;
    };

    std::vector<double> R(dim, 0.0);
    for (int b = segs - 1; b >= 0; --b) {
        std::vector<double> X(real_.dim(0), 0.0);
        Point delta(n());
        for (int i = 0; i < n(); ++i) {
            delta[i] = path[b + 1][i] - path[b][i];
            X[form_index_[1][i]] = sigma * delta[i];
        }
        std::vector<double> c(dim, 0.0);
        for (int q = 0; q < 3; ++q) {
            std::vector<Point> cols;
            for (const auto& F : frames) {
                Point v(n());
                for (int i = 0; i < n(); ++i) v[i] = (1 - kG3x[q]) * F[b][i] + kG3x[q] * F[b + 1][i];
                cols.push_back(v);
            }
            cols.push_back(delta);
            std::vector<double> val = form_value(cols);
            if (max_abs(val) == 0) continue;
            std::vector<double> Xq = X;
            for (double& x : Xq) x *= kG3x[q];
            val = real_.exp_ad(Xq, k, val);
            for (int j = 0; j < dim; ++j) c[j] += kG3w[q] * val[j];
        }
        if (b < segs - 1 && max_abs(R) != 0) R = real_.exp_ad(X, k, R);
        for (int j = 0; j < dim; ++j) R[j] += c[j];
    }
    return R;
}

std::vector<double> HolonomyEngine::transgressed_form_value(const SampledBrane& b, int row, ChenOrder order) const
{
    if (b.p != 2) throw ConfigError("transgressed_form_value: a surface (p = 2) is required");
    check_globe(b);
    if (row < 0 || row >= b.rows()) throw ConfigError("transgressed_form_value: row out of range");
    const double ds = 1.0 / (b.rows() - 1);
    int lo = std::max(row - 1, 0), hi = std::min(row + 1, b.rows() - 1);
    std::vector<Point> path, D;
    for (int t = 0; t < b.cols(); ++t) {
        Point x = b.at({row, t}), u = b.at({lo, t}), v = b.at({hi, t});
        Point dv(b.n);
        for (int i = 0; i < b.n; ++i) dv[i] = (v[i] - u[i]) / ((hi - lo) * ds);
        path.push_back(x);
        D.push_back(dv);
    }
    return transport_integral(path, {D}, order);
}

HolonomyResult HolonomyEngine::holonomy2(const SampledBrane& b, ChenOrder order) const
{
    if (b.p != 2) throw ConfigError("holonomy2: a surface (p = 2) is required");
    if (b.n != n()) throw ConfigError("holonomy2: surface dimension differs from the engine's n");
    check_globe(b);
    if (real_.depth() < 1) throw ConfigError("holonomy2: the truncation has no degree −1");
    std::vector<double> H(real_.dim(1), 0.0);
    for (int a = 0; a + 1 < b.rows(); ++a) {
        std::vector<Point> mid, D;
        for (int t = 0; t < b.cols(); ++t) {
            const double* x = b.ptr(b.flat({a, t}));
            const double* y = b.ptr(b.flat({a + 1, t}));
            Point m(b.n), dv(b.n);
            for (int i = 0; i < b.n; ++i) {
                m[i] = 0.5 * (x[i] + y[i]);
                dv[i] = y[i] - x[i];
            }
            mid.push_back(m);
            D.push_back(dv);
        }
        std::vector<double> Bds = transport_integral(mid, {D}, order);
        if (max_abs(Bds) == 0) continue;
        H = order == ChenOrder::EarlierLeft ? real_.bch(1, Bds, H) : real_.bch(1, H, Bds);
    }
    HolonomyResult r;
    r.d = degree();
    r.value = RealGroupElement{-1, H};
    r.step = 1.0 / (b.rows() - 1);
    auto row = [&](int a) {
        std::vector<Point> pts;
        for (int t = 0; t < b.cols(); ++t) pts.push_back(b.at({a, t}));
        return pts;
    };
    std::vector<double> L0 = log_signature(row(0), order), L1 = log_signature(row(b.rows() - 1), order);
    std::vector<double> negL0 = L0;
    for (double& x : negL0) x = -x;
    std::vector<double> target = real_.bch(0, L1, negL0);
    r.diagnostics["boundary_residual"] = max_abs(diff(real_.d(1, H), target));
    return r;
}

HolonomyResult HolonomyEngine::holonomy_p(const SampledBrane& b) const
{
    if (b.p < 3) throw ConfigError("holonomy_p: p ≥ 3 is required (use holonomy2 for surfaces)");
    if (b.n != n()) throw ConfigError("holonomy_p: brane dimension differs from the engine's n");
    const int p = b.p, q = p - 1;
    if (p > n() || q > real_.depth()) throw ConfigError("holonomy_p: degree −(p−1) is not supported by the truncation");
    check_globe(b);
    const int cols = b.cols();
    std::vector<double> total(real_.dim(q), 0.0);
    std::vector<int> cell(q, 0);
    const double weight = std::ldexp(1.0, -q);
    bool done = false;
    while (!done) {
        for (int g = 0; g < (1 << q); ++g) {
            std::vector<double> alpha(q);
            for (int k = 0; k < q; ++k) alpha[k] = kG2x[(g >> k) & 1];
            std::vector<Point> path(cols, Point(n(), 0.0));
            std::vector<std::vector<Point>> frames(q, std::vector<Point>(cols, Point(n(), 0.0)));
            for (int corner = 0; corner < (1 << q); ++corner) {
                std::vector<int> idx(p);
                double wgt = 1;
                std::vector<double> dw(q, 1.0);
                for (int k = 0; k < q; ++k) {
                    int c = (corner >> k) & 1;
                    idx[k] = cell[k] + c;
                    double f = c ? alpha[k] : 1 - alpha[k];
                    wgt *= f;
                    for (int j = 0; j < q; ++j) dw[j] *= j == k ? (c ? 1.0 : -1.0) : f;
                }
                for (int t = 0; t < cols; ++t) {
                    idx[q] = t;
                    const double* x = b.ptr(b.flat(idx));
                    for (int i = 0; i < n(); ++i) {
                        path[t][i] += wgt * x[i];
                        for (int k = 0; k < q; ++k) frames[k][t][i] += dw[k] * x[i];
                    }
                }
            }
            std::vector<double> v = transport_integral(path, frames, kChenOrder);
            for (std::size_t j = 0; j < v.size(); ++j) total[j] += weight * v[j];
        }
        int k = q - 1;
        while (k >= 0 && ++cell[k] == b.shape[k] - 1) cell[k--] = 0;
        done = k < 0;
    }
    HolonomyResult r;
    r.d = degree();
    r.value = RealGroupElement{-q, total};
    r.step = 1.0 / (b.shape[0] - 1);
    SampledBrane lo = b.slice(0), hi = b.slice(b.shape[0] - 1);
    HolonomyResult h0 = q == 2 ? holonomy2(lo) : holonomy_p(lo);
    HolonomyResult h1 = q == 2 ? holonomy2(hi) : holonomy_p(hi);
    r.diagnostics["boundary_residual"] = max_abs(diff(real_.d(q, total), diff(h1.value.coords, h0.value.coords)));
    return r;
}

double HolonomyEngine::distance(const RealGroupElement& a, const RealGroupElement& b) const
{
    if (a.degree != b.degree || a.coords.size() != b.coords.size()) throw ConfigError("distance: mismatched elements");
    return max_abs(diff(a.coords, b.coords));
}

WhiskerReport HolonomyEngine::whisker_checks(const PLPath& g_after, const PLPath& g_before, const SampledBrane& s) const
{
    WhiskerReport w;
    HolonomyResult base = holonomy2(s);
    HolonomyResult post = holonomy2(append_path(s, g_after));
    HolonomyResult pre = holonomy2(prepend_path(g_before, s));
    RealGroupElement m = signature_pl(g_before);
    w.post_path = distance(post.value, base.value);
    w.pre_path = distance(pre.value, real_.act(m, base.value));
    w.pre_path_inverse = distance(pre.value, real_.act(real_.inv(m), base.value));
    w.boundary = std::max(post.diagnostics.at("boundary_residual"), pre.diagnostics.at("boundary_residual"));
    return w;
}

ThinHomotopyReport HolonomyEngine::thin_homotopy_suite(const std::function<Point(double, double)>& f, int rows,
                                                       int cols) const
{
    ThinHomotopyReport rep;
    SampledBrane base = sample_surface(f, n(), rows, cols);
    HolonomyResult h = holonomy2(base);

    SampledBrane rp = sample_surface([&](double s, double t) { return f(smoothstep(s), smoothstep(t)); }, n(), rows, cols);
    rep.reparametrized = distance(holonomy2(rp).value, h.value);

    // a fold at the middle path: out along a bump and back, sampled unevenly
    const int mid = (rows - 1) / 2;
    const double smid = static_cast<double>(mid) / (rows - 1);
    Point v(n()), w2(n());
    for (int i = 0; i < n(); ++i) {
        v[i] = 0.3 * std::cos(1.0 + i);
        w2[i] = 0.2 * std::sin(2.0 + 3 * i);
    }
    auto bump = [&](double lam, double t) {
        Point x = f(smid, t);
        double env = std::sin(std::numbers::pi * t);
        for (int i = 0; i < n(); ++i) x[i] += env * (lam * v[i] + lam * lam * w2[i] * std::cos(std::numbers::pi * t));
        return x;
    };
    const int out = std::max(2, rows / 2), back = 2 * out;
    SampledBrane fold{n(), 2, {0, cols}, {}};
    auto push_row = [&](const std::function<Point(double)>& r) {
        for (int t = 0; t < cols; ++t) {
            Point x = r(static_cast<double>(t) / (cols - 1));
            fold.points.insert(fold.points.end(), x.begin(), x.end());
        }
        ++fold.shape[0];
    };
    for (int a = 0; a <= mid; ++a) push_row([&](double t) { return f(static_cast<double>(a) / (rows - 1), t); });
    for (int a = 1; a <= out; ++a) push_row([&](double t) { return bump(static_cast<double>(a) / out, t); });
    for (int a = back - 1; a >= 0; --a) push_row([&](double t) { return bump(static_cast<double>(a) / back, t); });
    for (int a = mid + 1; a < rows; ++a) push_row([&](double t) { return f(static_cast<double>(a) / (rows - 1), t); });
    rep.folded = distance(holonomy2(fold).value, h.value);

    HolonomyResult hr = holonomy2(reverse_rows(base));
    rep.reversed = max_abs(real_.mul(hr.value, h.value).coords);
    return rep;
}

}  // namespace dgl
