#pragma once

// Verification suites shared by `dglc verify` and the acceptance driver.
// Each returns one named result; exact checks have tol = 0.

#include "dgl/holonomy.hpp"

#include <string>
#include <vector>

namespace dgl {

struct CheckResult {
    std::string name;
    bool ok = false;
    double value = 0;  // measured residual or failure count
    double tol = 0;
    std::string detail;
};

json check_to_json(const CheckResult& c);

// d² = 0: on every generator; on every right-normed monomial literally for
// ℓ ≤ literal_letters; on the Jacobi spanning set of each S_n-orbit
// representative multiset for ℓ ≤ monomial_letters; above that on every word
// of the tensor algebra with such a multiset, which spans all right-normed
// monomials on it (d on 𝔣 is the restriction of the derivation d of T).
CheckResult check_d_squared(int n, int max_letters, int literal_letters = 4, int monomial_letters = 5);
// d ∘ relabel = relabel ∘ d on random Lie monomials for all index permutations.
CheckResult check_relabel_equivariance(int n, int max_letters, unsigned seed);
CheckResult check_flatness(int n, int max_letters);
CheckResult check_cohomology(int n, int max_letters);
CheckResult check_reutenauer(int n, int lo, int hi);
CheckResult check_ab_gamma(int n, int max_letters);
CheckResult check_sab_kernels(int n, int max_letters);
CheckResult check_crossed_module_cohomology(int n, int max_letters);
CheckResult check_cartesian_square(int n, int max_letters);
CheckResult check_quasi_isomorphism(int n, int max_letters);
CheckResult check_structure_constants(int n, int d);
CheckResult check_crossed_laws(const NilpotentCrossedComplex& c, unsigned seed, int samples);
CheckResult check_ncat_laws(const NilpotentCrossedComplex& c, unsigned seed, int samples);

// numeric
CheckResult check_signature_oracle(const HolonomyEngine& e, unsigned seed, double tol = 1e-10);
CheckResult check_signature_exact(const HolonomyEngine& e, unsigned seed);
CheckResult check_sampled_reparametrization(const HolonomyEngine& e, double tol = 1e-6);
CheckResult check_levy_area(const HolonomyEngine& e, double tol = 1e-6);
// residuals at N = 50, 100, 200 and the two successive ratios
CheckResult check_boundary_identity(const HolonomyEngine& e, unsigned seed, double tol = 1e-5);
CheckResult check_order_bootstrap(const HolonomyEngine& e);
CheckResult check_vertical_composition(const HolonomyEngine& e, unsigned seed, double tol = 1e-5);
CheckResult check_whiskering(const HolonomyEngine& e, unsigned seed, double tol = 1e-5);
CheckResult check_thin_homotopy(const HolonomyEngine& e, unsigned seed, double tol = 1e-5);
CheckResult check_cube(const HolonomyEngine& e, int N, double tol = 1e-4);
// unit cube with N1 = N and 2N intervals along a₁: residual at 2N within tol
// and a successive ratio near 4 (the strip rule of the faces is second order)
CheckResult check_cube_convergence(const HolonomyEngine& e, int N, double tol = 1e-4);

// a smooth 2-globe in ℝ³ from 0 to (1,1,1) with random bulges
std::function<Point(double, double)> random_globe(unsigned seed);
PLPath random_pl_path(unsigned seed, int n, int segs, const Point& start);

}  // namespace dgl
