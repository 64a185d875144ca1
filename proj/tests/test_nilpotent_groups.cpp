#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/nilpotent.hpp"

#include <random>

using namespace dgl;

namespace {

Letter Z(std::initializer_list<int> I) { return letter_from_indices(std::vector<int>(I)); }

GroupElement random_elem(const CrossedGroups& G, int k, std::mt19937_64& rng, double density = 0.3)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> c(-3, 3);
    GroupElement g = G.identity(k);
    for (auto& x : g.coords)
        if (u(rng) < density) x = Rational(c(rng), 2);
    for (auto& x : g.coords) x.canonicalize();
    return g;
}

PMorphism random_morph(const CrossedGroups& G, int m, std::mt19937_64& rng)
{
    PMorphism x;
    for (int k = 0; k < m; ++k) x.comps.push_back(k <= G.depth() ? random_elem(G, k, rng) : GroupElement{-k, {}});
    return x;
}

// random m-morphism whose lowest i components are those of b
PMorphism with_base(const CrossedGroups& G, const PMorphism& b, int m, std::mt19937_64& rng)
{
    PMorphism x = random_morph(G, m, rng);
    for (int k = 0; k < b.dim(); ++k) x.comps[k] = b.comps[k];
    return x;
}

const NilpotentCrossedComplex& C34()
{
    static NilpotentCrossedComplex c = extract_structure_constants(3, 4);
    return c;
}

}  // namespace

TEST_CASE("Dynkin series")
{
    auto C = extract_structure_constants(2, 2);
    CrossedGroups G(C);
    std::vector<Rational> x{1, 0, 0}, y{0, 1, 0};
    auto z = G.bch(0, x, y);
    CHECK(z == std::vector<Rational>{1, 1, Rational(1, 2)});
    for (int d = 1; d <= 5; ++d) CHECK_FALSE(dynkin_terms(d).empty());
    CHECK(dynkin_terms(1).size() == 2);
}

TEST_CASE("BCH agrees with the tensor model in degree 0")
{
    std::mt19937_64 rng(1);
    for (int n = 2; n <= 3; ++n)
        for (int d = 1; d <= 4; ++d) {
            auto C = extract_structure_constants(n, d);
            CrossedGroups G(C);
            for (int rep = 0; rep < 10; ++rep) {
                auto a = random_elem(G, 0, rng, 0.5), b = random_elem(G, 0, rng, 0.5);
                Tensor ta = realize_degree0(C, a.coords), tb = realize_degree0(C, b.coords);
                Tensor lhs = realize_degree0(C, G.mul(a, b).coords);
                CHECK(lhs == tensor_log(tensor_exp(ta) * tensor_exp(tb)));
            }
        }
}

TEST_CASE("group laws")
{
    std::mt19937_64 rng(2);
    for (int n = 2; n <= 3; ++n)
        for (int d = 2; d <= 4; ++d) {
            auto C = n == 3 && d == 4 ? C34() : extract_structure_constants(n, d);
            CrossedGroups G(C);
            for (int k = 0; k <= G.depth(); ++k)
                for (int rep = 0; rep < (n == 3 && d == 4 ? 100 : 20); ++rep) {
                    auto a = random_elem(G, k, rng), b = random_elem(G, k, rng), c = random_elem(G, k, rng);
                    CHECK(G.equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))));
                    CHECK(G.equal(G.mul(a, G.identity(k)), a));
                    CHECK(G.equal(G.mul(a, G.inv(a)), G.identity(k)));
                }
        }
}

TEST_CASE("boundary and action")
{
    auto C = C34();
    CrossedGroups G(C);
    GroupElement z12 = G.identity(1);
    z12.coords[C.letter_index(Z({1, 2}))] = 1;
    GroupElement expect = G.identity(0);
    RawVec br = raw_right_normed({Z({1}), Z({2})});
    for (int a = 0; a < C.dim(0); ++a)
        if (C.degrees[0].vectors[a] == br) expect.coords[a] = 1;
    CHECK(G.equal(G.boundary(z12), expect));
    CHECK(G.equal(G.boundary(G.identity(1)), G.identity(0)));

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        auto g = random_elem(G, 1, rng), h = random_elem(G, 1, rng);
        auto u = random_elem(G, 0, rng), v = random_elem(G, 0, rng);
        // ∂ is a homomorphism
        CHECK(G.equal(G.boundary(G.mul(g, h)), G.mul(G.boundary(g), G.boundary(h))));
        // crossed-module axioms
        CHECK(G.equal(G.mul(G.mul(g, h), G.inv(g)), G.act(G.boundary(g), h)));
        CHECK(G.equal(G.mul(G.mul(u, G.boundary(g)), G.inv(u)), G.boundary(G.act(u, g))));
        // the action is by automorphisms and is a group action
        CHECK(G.equal(G.act(u, G.mul(g, h)), G.mul(G.act(u, g), G.act(u, h))));
        CHECK(G.equal(G.act(G.mul(u, v), g), G.act(u, G.act(v, g))));
        CHECK(G.equal(G.act(G.identity(0), g), g));
        // degree −2: ∂∂ trivial, equivariance, action of ∂G^{−1} trivial
        auto x = random_elem(G, 2, rng);
        CHECK(G.equal(G.boundary(G.boundary(x)), G.identity(0)));
        CHECK(G.equal(G.boundary(G.act(u, x)), G.act(u, G.boundary(x))));
        CHECK(G.equal(G.act(G.boundary(g), x), x));
        // image of ∂ from degree −2 is central in G^{−1}
        auto bx = G.boundary(x);
        CHECK(G.equal(G.mul(G.mul(bx, g), G.inv(bx)), g));
    }
    // kernel of ∂ is central: elements at the top letter count have ∂ = 1
    GroupElement top = G.identity(1);
    for (int b = 0; b < C.dim(1); ++b)
        if (C.differential[1][b].empty()) top.coords[b] = 1;
    CHECK(G.equal(G.boundary(top), G.identity(0)));
    for (int rep = 0; rep < 20; ++rep) {
        auto g = random_elem(G, 1, rng);
        CHECK(G.equal(G.mul(top, g), G.mul(g, top)));
    }
}

TEST_CASE("n-category laws")
{
    auto C = C34();
    CrossedGroups G(C);
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 100; ++rep) {
        // units and globularity
        for (int m = 1; m <= 3; ++m) {
            PMorphism x = random_morph(G, m, rng);
            CHECK(G.equal(G.source(G.unit(x)), x));
            CHECK(G.equal(G.target(G.unit(x)), x));
            if (m >= 2) {
                CHECK(G.equal(G.source(G.source(x)), G.source(G.target(x))));
                CHECK(G.equal(G.target(G.target(x)), G.target(G.source(x))));
            }
            for (int i = 0; i < m; ++i) {
                PMorphism ti = G.target(x, i);
                PMorphism one = ti;
                while (one.dim() < m) one = G.unit(one);
                CHECK(G.equal(G.compose(one, x, i), x));
                PMorphism one_s = G.source(x, i);
                while (one_s.dim() < m) one_s = G.unit(one_s);
                CHECK(G.equal(G.compose(x, one_s, i), x));
            }
        }
        // associativity of each *_i and interchange, m = 2 and 3
        for (int m = 2; m <= 3; ++m)
            for (int i = 0; i < m; ++i) {
                PMorphism z = random_morph(G, m, rng);
                PMorphism y = with_base(G, G.target(z, i), m, rng);
                PMorphism x = with_base(G, G.target(y, i), m, rng);
                PMorphism xy = G.compose(x, y, i);
                CHECK(G.equal(G.compose(xy, z, i), G.compose(x, G.compose(y, z, i), i)));
                CHECK(G.equal(G.source(xy, i), G.source(y, i)));
                CHECK(G.equal(G.target(xy, i), G.target(x, i)));
                for (int j = 0; j < i; ++j) {
                    PMorphism t = random_morph(G, m, rng);
                    PMorphism zz = with_base(G, G.target(t, i), m, rng);
                    PMorphism yy = with_base(G, G.target(t, j), m, rng);
                    PMorphism xx = with_base(G, G.target(yy, i), m, rng);
                    PMorphism lhs = G.compose(G.compose(xx, yy, i), G.compose(zz, t, i), j);
                    PMorphism rhs = G.compose(G.compose(xx, zz, j), G.compose(yy, t, j), i);
                    CHECK(G.equal(lhs, rhs));
                }
            }
    }
    CHECK_THROWS_AS(G.compose(random_morph(G, 2, rng), random_morph(G, 2, rng), 1), DomainError);
}

TEST_CASE("whiskering")
{
    auto C = C34();
    CrossedGroups G(C);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        PMorphism T = random_morph(G, 2, rng);  // h : g₀ ⇒ g₁
        const auto& h = T.comps[1];
        const auto& g0 = T.comps[0];
        GroupElement g1 = G.target(T).comps[0];
        GroupElement u = random_elem(G, 0, rng);
        PMorphism U;
        U.comps = {u};
        PMorphism Tu = G.compose(T, G.unit(U), 0), uT = G.compose(G.unit(U), T, 0);
        CHECK(G.equal(Tu.comps[0], G.mul(g0, u)));
        CHECK(G.equal(G.target(Tu).comps[0], G.mul(g1, u)));
        CHECK(G.equal(Tu.comps[1], h));
        CHECK(G.equal(uT.comps[1], G.act(u, h)));
        CHECK(G.equal(G.target(uT).comps[0], G.mul(u, g1)));
        // with ∂ on the right, g₀u ⇒ g₁u is carried by β(u⁻¹)(h)
        GroupElement hu = G.act(G.inv(u), h);
        CHECK(G.equal(G.mul(G.mul(g0, u), G.boundary(hu)), G.mul(G.mul(g0, G.boundary(h)), u)));
    }
}

TEST_CASE("group element JSON")
{
    GroupElement g{-1, {Rational(1, 2), Rational(-3), Rational(0)}};
    auto back = group_element_from_json(json::parse(group_element_to_json(g).dump()));
    CHECK(back.degree == -1);
    CHECK(back.coords == g.coords);
    CHECK(group_element_to_json(g)["coords"][0] == "1/2");
    CHECK_THROWS_AS(group_element_from_json(json::parse(R"({"degree":1,"coords":[]})")), ConfigError);
}
