#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/holonomy.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dgl;

namespace {

Letter Z(std::initializer_list<int> I) { return letter_from_indices(std::vector<int>(I)); }

const HolonomyEngine& E34()
{
    static HolonomyEngine e(3, 4);
    return e;
}

int basis_index(const NilpotentCrossedComplex& c, int k, const RawVec& v)
{
    for (int a = 0; a < c.dim(k); ++a)
        if (c.degrees[k].vectors[a] == v) return a;
    return -1;
}

// a smooth 2-globe from 0 to (1,1,1) with random bulges
std::function<Point(double, double)> random_globe(unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    std::array<double, 9> c;
    for (auto& x : c) x = u(rng);
    return [c](double s, double t) {
        const double pi = std::numbers::pi;
        double e = std::sin(pi * t);
        Point q(3);
        for (int i = 0; i < 3; ++i)
            q[i] = std::pow(t, i + 1) + e * (c[3 * i] * std::cos(pi * s) + c[3 * i + 1] * std::sin(pi * s) +
                                             c[3 * i + 2] * s * s * std::cos(pi * t));
        return q;
    };
}

PLPath random_path(std::mt19937_64& rng, int n, int segs, const Point& start)
{
    std::uniform_real_distribution<double> u(-1, 1);
    PLPath g{n, {start}};
    for (int k = 0; k < segs; ++k) {
        Point q = g.points.back();
        for (auto& x : q) x += u(rng);
        g.points.push_back(q);
    }
    return g;
}

PLPath reversed(PLPath g)
{
    std::reverse(g.points.begin(), g.points.end());
    return g;
}

}  // namespace

TEST_CASE("PL signatures")
{
    const auto& E = E34();
    // constant path
    ExactPLPath c{3, {{1, 2, 3}, {1, 2, 3}}};
    CHECK(signature_tensor(c, 4) == Tensor::unit(3, 4));
    for (const auto& x : E.signature_pl(c).coords) CHECK(sgn(x) == 0);

    // single segment: ⟨S, Z_{i₁}···Z_{i_k}⟩ = v_{i₁}···v_{i_k}/k!
    ExactPLPath seg{3, {{0, 0, 0}, {Rational(1, 2), Rational(-2), Rational(3)}}};
    Tensor s = signature_tensor(seg, 4);
    const std::vector<Rational>& v = seg.points[1];
    for (const auto& [w, coef] : s.terms()) {
        Rational expect = 1;
        for (int k = 0; k < w.size(); ++k) expect *= v[letter_indices(w[k]).front() - 1] / Rational(k + 1);
        CHECK(coef == expect);
    }
    CHECK(static_cast<int>(s.terms().size()) == 1 + 3 + 9 + 27 + 81);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> q(-6, 6);
    for (int rep = 0; rep < 5; ++rep) {
        ExactPLPath g{3, {{0, 0, 0}}}, h{3, {}};
        for (int k = 0; k < 4; ++k) {
            auto p = g.points.back();
            for (auto& x : p) {
                x += Rational(q(rng), 4);
                x.canonicalize();
            }
            g.points.push_back(p);
        }
        h.points = {g.points.back()};
        for (int k = 0; k < 3; ++k) {
            auto p = h.points.back();
            for (auto& x : p) {
                x += Rational(q(rng), 3);
                x.canonicalize();
            }
            h.points.push_back(p);
        }
        Tensor sg = signature_tensor(g, 4);
        // group-like exactly
        auto gl = is_group_like(sg);
        CHECK(gl.ok);
        CHECK(gl.exact);
        // followed by its reversal
        ExactPLPath back = g;
        for (auto it = g.points.rbegin() + 1; it != g.points.rend(); ++it) back.points.push_back(*it);
        CHECK(signature_tensor(back, 4) == Tensor::unit(3, 4));
        // Chen: the part run first sits on the left
        ExactPLPath gh = g;
        gh.points.insert(gh.points.end(), h.points.begin() + 1, h.points.end());
        CHECK(signature_tensor(gh, 4) == sg * signature_tensor(h, 4));
        // log-coordinates realize the tensor logarithm
        GroupElement lg = E.signature_pl(g);
        CHECK(realize_degree0(E.complex(), lg.coords) == tensor_log(sg));
        CHECK(E.exact_groups().equal(E.signature_pl(gh), E.exact_groups().mul(lg, E.signature_pl(h))));
    }
    CHECK_THROWS_AS(signature_tensor(c, 9), ConfigError);
    CHECK_THROWS_AS(E.signature_pl(PLPath{2, {{0, 0}, {1, 1}}}), ConfigError);
}

TEST_CASE("PL signature against the quadrature oracle")
{
    std::mt19937_64 rng(12);
    PLPath g = random_path(rng, 3, 5, {0, 0, 0});
    RealTensor pl = signature_tensor(g, 4), quad = signature_quadrature(g, 4, 10000);
    double err = 0;
    for (const auto& [w, c] : (pl - quad).terms()) err = std::max(err, std::abs(c));
    CHECK(err <= 1e-10);
    CHECK(is_group_like(pl, 1e-10).ok);
    // log-coordinates from BCH agree with the tensor logarithm
    RealTensor lg = realize_degree0(E34().complex(), E34().signature_pl(g).coords);
    double e2 = 0;
    for (const auto& [w, c] : (lg - tensor_log(pl)).terms()) e2 = std::max(e2, std::abs(c));
    CHECK(e2 <= 1e-10);
}

TEST_CASE("sampled signatures")
{
    const auto& E = E34();
    const double pi = std::numbers::pi;
    auto arc = [&](double a) { return Point{std::cos(pi / 2 * a), std::sin(pi / 2 * a), 0.0}; };
    const auto& C = E.complex();
    int z12 = basis_index(C, 0, raw_right_normed({Z({1}), Z({2})}));
    REQUIRE(z12 >= 0);
    RealGroupElement sig = E.signature_sampled(arc, 2000);
    // Lévy area = area of the circular segment cut off by the chord
    CHECK(std::abs(sig.coords[z12] - (pi / 4 - 0.5)) <= 1e-6);
    RealGroupElement rep = E.signature_sampled([&](double a) { return arc(smoothstep(a)); }, 2000);
    CHECK(E.distance(sig, rep) <= 1e-6);
    auto gl = is_group_like(signature_tensor(sample_path(arc, 3, 2000), 4), 1e-8);
    CHECK(gl.ok);
    CHECK(gl.max_residual <= 1e-8);
    CHECK_THROWS_AS(sample_path(arc, 3, 1), ConfigError);
}

TEST_CASE("transgressed form")
{
    const auto& E = E34();
    // constant in s
    SampledBrane flat = sample_surface([](double, double t) { return Point{t, t * t, 0.0}; }, 3, 5, 9);
    for (int row = 0; row < 5; ++row)
        for (double x : E.transgressed_form_value(flat, row)) CHECK(x == 0);
    CHECK(E.distance(E.holonomy2(flat).value, E.groups().identity(1)) == 0);

    // the planar square at class 2: ∫ B ds has Z₁₂-coefficient 1
    HolonomyEngine E2(3, 2);
    const int z12 = E2.complex().letter_index(Z({1, 2}));
    for (double lam : {1.0, 2.5, -0.5}) {
        SampledBrane sq = coordinate_square(3, 1, 2, 41, 41);
        for (std::size_t k = 1; k < sq.points.size(); k += 3) sq.points[k] *= lam;
        double integral = 0;
        for (int row = 0; row < sq.rows(); ++row) {
            double w = (row == 0 || row == sq.rows() - 1) ? 0.5 : 1.0;
            integral += w * E2.transgressed_form_value(sq, row)[z12] / (sq.rows() - 1);
        }
        CHECK(integral == doctest::Approx(lam).epsilon(1e-12));
        CHECK(E2.holonomy2(sq).value.coords[z12] == doctest::Approx(lam).epsilon(1e-12));
    }
    SampledBrane thin{3, 2, {1, 3}, std::vector<double>(9, 0.0)};
    CHECK_THROWS_AS(E.transgressed_form_value(thin, 0), DomainError);
}

TEST_CASE("boundary identity, convergence and the order bootstrap")
{
    const auto& E = E34();
    auto f = random_globe(21);
    std::vector<double> res;
    for (int N : {50, 100, 200}) res.push_back(E.holonomy2(sample_surface(f, 3, N + 1, N + 1)).diagnostics.at("boundary_residual"));
    CHECK(res[2] <= 1e-5);
    for (int k = 0; k + 1 < 3; ++k) {
        double ratio = res[k] / res[k + 1];
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    // reference square: of the two orders only the frozen one satisfies the identity
    SampledBrane ref = sample_surface(
        [](double s, double t) {
            Point q = surface_value(coordinate_square(3, 1, 2, 3, 3), s, t);
            q[2] = 0.7 * std::sin(std::numbers::pi * t) * std::sin(std::numbers::pi * s);
            return q;
        },
        3, 101, 101);
    double good = E.holonomy2(ref, kChenOrder).diagnostics.at("boundary_residual");
    double bad = E.holonomy2(ref, kChenOrder == ChenOrder::EarlierLeft ? ChenOrder::EarlierRight : ChenOrder::EarlierLeft)
                     .diagnostics.at("boundary_residual");
    CHECK(good <= 1e-4);
    CHECK(bad >= 1e-2);
    // a surface breaking the globe condition is rejected
    SampledBrane broken = sample_surface(f, 3, 11, 11);
    broken.points[broken.flat({5, 10}) * 3] += 1e-3;
    CHECK_THROWS_AS(E.holonomy2(broken), DomainError);
}

TEST_CASE("vertical composition and reversal")
{
    const auto& E = E34();
    const auto& G = E.groups();
    auto f = random_globe(22);
    auto first = sample_surface([&](double s, double t) { return f(0.5 * s, t); }, 3, 101, 201);
    auto later = sample_surface([&](double s, double t) { return f(0.5 + 0.5 * s, t); }, 3, 61, 201);
    RealGroupElement h1 = E.holonomy2(first).value, h2 = E.holonomy2(later).value;
    RealGroupElement stacked = E.holonomy2(stack_surfaces(later, first)).value;
    CHECK(E.distance(stacked, G.mul(h2, h1)) <= 1e-12);
    RealGroupElement whole = E.holonomy2(sample_surface(f, 3, 201, 201)).value;
    CHECK(E.distance(whole, G.mul(h2, h1)) <= 1e-5);
    RealGroupElement rev = E.holonomy2(reverse_rows(sample_surface(f, 3, 201, 201))).value;
    CHECK(E.distance(G.mul(rev, whole), G.identity(1)) <= 1e-12);
}

TEST_CASE("whiskering")
{
    const auto& E = E34();
    std::mt19937_64 rng(23);
    // coordinate square with random PL whiskers
    auto sq = coordinate_square(3, 1, 2, 201, 201);
    for (int rep = 0; rep < 3; ++rep) {
        PLPath after = random_path(rng, 3, 3, {1, 1, 0});
        PLPath before = reversed(random_path(rng, 3, 3, {0, 0, 0}));
        auto w = E.whisker_checks(after, before, sq);
        CHECK(w.post_path <= 1e-5);
        CHECK(w.pre_path <= 1e-5);
        CHECK(w.boundary <= 1e-5);
        // the inverse-translated form differs at first order
        CHECK(w.pre_path_inverse >= 1e-3);
    }
    // curved surfaces
    for (int rep = 0; rep < 2; ++rep) {
        auto s = sample_surface(random_globe(100 + rep), 3, 201, 201);
        auto w = E.whisker_checks(random_path(rng, 3, 3, {1, 1, 1}), reversed(random_path(rng, 3, 3, {0, 0, 0})), s);
        CHECK(w.post_path <= 1e-5);
        CHECK(w.pre_path <= 1e-5);
    }
    auto w = E.whisker_checks(PLPath{3, {{1, 1, 0}, {1, 1, 0}}}, PLPath{3, {{0, 0, 0}, {0, 0, 0}}}, sq);
    CHECK(w.post_path == 0);
    CHECK(w.pre_path == 0);
    CHECK_THROWS_AS(E.whisker_checks(PLPath{3, {{0, 0, 0}, {1, 0, 0}}}, PLPath{3, {{0, 0, 0}}}, sq), DomainError);
}

TEST_CASE("thin homotopy")
{
    const auto& E = E34();
    auto square = [](double s, double t) {
        static const SampledBrane base = coordinate_square(3, 2, 3, 3, 3);
        return surface_value(base, s, t);
    };
    auto sq = E.thin_homotopy_suite(square, 201, 201);
    CHECK(sq.reparametrized <= 1e-5);
    CHECK(sq.folded <= 1e-5);
    CHECK(sq.reversed <= 1e-12);
    // curved surface: the discrepancies are discretization errors of order h²
    auto f = random_globe(31);
    auto coarse = E.thin_homotopy_suite(f, 101, 101), fine = E.thin_homotopy_suite(f, 201, 201);
    CHECK(fine.folded <= 1e-5);
    CHECK(fine.reversed <= 1e-12);
    CHECK(coarse.reparametrized / fine.reparametrized > 3.5);
    CHECK(coarse.folded / fine.folded > 3.5);
}

TEST_CASE("p = 3 holonomy")
{
    HolonomyEngine E3(3, 3);
    const int z123 = E3.complex().letter_index(Z({1, 2, 3}));
    REQUIRE(z123 >= 0);
    auto h = E3.holonomy_p(unit_cube_brane(40, 40, 40));
    CHECK(h.value.degree == -2);
    CHECK(std::abs(h.value.coords[z123] - 1) <= 1e-4);
    CHECK(h.diagnostics.at("boundary_residual") <= 1e-4);

    // a deformed cube: boundary residuals converge at second order
    std::vector<double> res;
    for (int N : {8, 16, 32}) {
        auto b = unit_cube_brane(N, N, N);
        for (std::size_t i = 0; i < b.points.size(); i += 3) {
            double x = b.points[i], y = b.points[i + 1], z = b.points[i + 2];
            b.points[i] = x + 0.2 * std::sin(2 * y);
            b.points[i + 1] = y + 0.3 * z * z;
            b.points[i + 2] = z + 0.25 * x * y;
        }
        res.push_back(E3.holonomy_p(b).diagnostics.at("boundary_residual"));
    }
    CHECK(res[0] / res[1] > 3.5);
    CHECK(res[1] / res[2] > 3.5);

    // constant in the outer coordinate
    auto face = unit_cube_brane(4, 4, 4).slice(0);
    SampledBrane still{3, 3, {3, face.shape[0], face.shape[1]}, {}};
    for (int k = 0; k < 3; ++k) still.points.insert(still.points.end(), face.points.begin(), face.points.end());
    for (double x : E3.holonomy_p(still).value.coords) CHECK(x == 0);

    HolonomyEngine E2(2, 3);
    SampledBrane planar{2, 3, {3, 3, 3}, std::vector<double>(54, 0.0)};
    CHECK_THROWS_AS(E2.holonomy_p(planar), ConfigError);
    CHECK_THROWS_AS(E3.holonomy_p(coordinate_square(3, 1, 2, 3, 3)), ConfigError);
}

TEST_CASE("JSON forms")
{
    PLPath g{2, {{0, 0}, {1, 0.5}}};
    auto g2 = path_from_json(json::parse(path_to_json(g).dump()));
    CHECK(g2.points == g.points);
    auto s = coordinate_square(3, 1, 3, 5, 5);
    json js = brane_to_json(s);
    CHECK(js.at("grid").size() == 5);
    CHECK(brane_from_json(json::parse(js.dump())).points == s.points);
    auto c = unit_cube_brane(2, 4, 2);
    json jc = brane_to_json(c);
    CHECK(jc.at("shape") == std::vector<int>{3, 5, 3});
    auto c2 = brane_from_json(json::parse(jc.dump()));
    CHECK(c2.points == c.points);
    CHECK(c2.shape == c.shape);
    HolonomyEngine E(3, 2);
    auto r = E.holonomy2(s);
    json jr = holonomy_result_to_json(r, E.complex());
    CHECK(jr.at("degree") == -1);
    CHECK(jr.at("labels").size() == r.value.coords.size());
    CHECK(jr.at("diagnostics").contains("boundary_residual"));
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"n":2,"points":[]})")), ConfigError);
    CHECK_THROWS_AS(brane_from_json(json::parse(R"({"n":2,"p":3,"shape":[2,2],"points":[]})")), ConfigError);
}
