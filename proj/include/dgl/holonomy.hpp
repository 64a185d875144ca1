#pragma once

// Chen signatures of PL paths, the covariantly transgressed 2-form, and
// holonomies of sampled branes in ℝⁿ for the universal connection
// A = Σ Zᵢ dtᵢ + Σ Z_ij dtᵢdtⱼ + ...

#include "dgl/nilpotent.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dgl {

// How a path's segment exponentials are multiplied.  EarlierLeft is the
// right-invariant ODE M' = M·A(γ̇): M(γ) = E₁E₂···E_N, so the path run first
// sits on the left.  EarlierRight is the reverse; with it the transgressed
// form is taken verbatim, β(M(γ_{≤t}))⁻¹ applied to A²(∂_tΣ, ∂_sΣ), and
// s-strips are multiplied later-on-the-right.  Only EarlierLeft (with
// transport β(M(γ_{≤t})), A²(∂_sΣ, ∂_tΣ), later strips on the left) satisfies
// ∂M(Σ) = M(∂₁Σ)·M(∂₀Σ)⁻¹; the holonomy tests check this on a reference
// square and fail if the constant is flipped.
enum class ChenOrder { EarlierLeft, EarlierRight };
inline constexpr ChenOrder kChenOrder = ChenOrder::EarlierLeft;

template <class S>
struct BasicPLPath {
    int n = 0;
    std::vector<std::vector<S>> points;
};
using PLPath = BasicPLPath<double>;
using ExactPLPath = BasicPLPath<Rational>;

using Point = std::vector<double>;

// Samples of a p-brane on a product grid.  shape[k] is the number of samples
// along axis k; axis 0 is outermost and axis p−1 is the path parameter t.
// For p = 2 the axes are (s, t).
struct SampledBrane {
    int n = 0;
    int p = 0;
    std::vector<int> shape;
    std::vector<double> points;  // row-major, n values per sample

    std::size_t size() const;
    std::size_t flat(const std::vector<int>& idx) const;
    Point at(const std::vector<int>& idx) const;
    const double* ptr(std::size_t flat_index) const { return points.data() + flat_index * n; }
    int rows() const { return shape.at(0); }
    int cols() const { return shape.back(); }
    // the (p−1)-brane at fixed outermost index
    SampledBrane slice(int i0) const;
};

struct HolonomyResult {
    int d = 0;
    RealGroupElement value;
    double step = 0;
    std::map<std::string, double> diagnostics;
};

json path_to_json(const PLPath& g);
PLPath path_from_json(const json& j);
json brane_to_json(const SampledBrane& b);
SampledBrane brane_from_json(const json& j);
json holonomy_result_to_json(const HolonomyResult& r, const NilpotentCrossedComplex& c);

// Throws DomainError when the globe conditions fail beyond tol (relative to
// the size of the brane): faces {a_i = 0, 1} constant in the outer coordinates.
void check_globe(const SampledBrane& b, double tol = 1e-9);

// Truncated tensor signature, product of exp(Σ Δxᵢ Zᵢ).
RealTensor signature_tensor(const PLPath& g, int d, ChenOrder order = kChenOrder);
Tensor signature_tensor(const ExactPLPath& g, int d, ChenOrder order = kChenOrder);
// Independent oracle: RK4 on M' = M·A(γ̇) with `steps` uniform steps in
// arc-parameter over the whole path (EarlierLeft order).
RealTensor signature_quadrature(const PLPath& g, int d, int steps);

// Samplers take the number of samples per axis, uniformly on [0,1].
PLPath sample_path(const std::function<Point(double)>& f, int n, int samples);
SampledBrane sample_surface(const std::function<Point(double, double)>& f, int n, int rows, int cols);
SampledBrane sample_brane3(const std::function<Point(double, double, double)>& f, int n, int N0, int N1, int N2);

// Surface constructions.  Composition follows the rule that in a*b the
// second argument is run first.
SampledBrane stack_surfaces(const SampledBrane& later, const SampledBrane& first);  // later *₁ first
SampledBrane append_path(const SampledBrane& s, const PLPath& g);                    // g *₀ Σ
SampledBrane prepend_path(const PLPath& g, const SampledBrane& s);                   // Σ *₀ g
SampledBrane reverse_rows(const SampledBrane& s);
// value of the bilinear interpolant at (s, t) ∈ [0,1]²
Point surface_value(const SampledBrane& s, double sp, double tp);

// 2-globe sweeping the square spanned by e_i, e_j (indices 1-based):
// paths 0 → s·e_i + (1−s)·e_j → e_i + e_j, so ∂₀ runs through e_j first.
// cols must be odd so that the corner is a sample.
SampledBrane coordinate_square(int n, int i, int j, int rows, int cols);
// 3-globe in ℝ³ whose swept volume is the unit cube, with N0, N1, N2
// intervals along (a₂, a₁, t).  N0 even, N1 divisible by 4 and N2 even keep
// every kink on the grid, so the interpolant is the brane itself.
SampledBrane unit_cube_brane(int N0, int N1, int N2);

double smoothstep(double a);

struct WhiskerReport {
    double post_path = 0;       // |M(γ *₀ Σ) − M(Σ)|, γ run after Σ
    double pre_path = 0;        // |M(Σ *₀ γ) − β(M(γ))(M(Σ))|, γ run before Σ
    double pre_path_inverse = 0;  // same against β(M(γ)⁻¹)(M(Σ))
    double boundary = 0;        // boundary identity on the whiskered surfaces
};

struct ThinHomotopyReport {
    double reparametrized = 0;
    double folded = 0;
    double reversed = 0;  // |M(Σ̄)·M(Σ)| against the identity
};

class HolonomyEngine {
public:
    HolonomyEngine(int n, int d);
    explicit HolonomyEngine(const NilpotentCrossedComplex& c);

    int n() const { return exact_.complex().n; }
    int degree() const { return exact_.cls(); }
    const NilpotentCrossedComplex& complex() const { return exact_.complex(); }
    const CrossedGroups& exact_groups() const { return exact_; }
    const RealCrossedGroups& groups() const { return real_; }

    RealGroupElement signature_pl(const PLPath& g, ChenOrder order = kChenOrder) const;
    GroupElement signature_pl(const ExactPLPath& g, ChenOrder order = kChenOrder) const;
    RealGroupElement signature_sampled(const std::function<Point(double)>& f, int samples) const;

    // B(s) at a grid row, in 𝔤^{−1} coordinates: ∫₀¹ β(M(σ_{s,≤t}))A²(∂_sΣ, ∂_tΣ) dt
    // with ∂_sΣ by central differences (one-sided at the boundary rows).
    std::vector<double> transgressed_form_value(const SampledBrane& b, int row, ChenOrder order = kChenOrder) const;
    // Strip-wise product of exp(B Δs) with B evaluated at the strip midpoint.
    HolonomyResult holonomy2(const SampledBrane& b, ChenOrder order = kChenOrder) const;
    // Abelian p-holonomy, p ≥ 3: exp of ∫ β(M(σ_{≤t}))A^p(∂_{a₀}Σ, ..., ∂_tΣ).
    HolonomyResult holonomy_p(const SampledBrane& b) const;

    WhiskerReport whisker_checks(const PLPath& g_after, const PLPath& g_before, const SampledBrane& s) const;
    ThinHomotopyReport thin_homotopy_suite(const std::function<Point(double, double)>& f, int rows, int cols) const;

    double distance(const RealGroupElement& a, const RealGroupElement& b) const;

private:
    // ∫ along the nodes of `path` of β(M_{≤t}) applied to the A^p-value on the
    // frames `frames[k][node]`; returns coordinates in degree −(p−1).
    std::vector<double> transport_integral(const std::vector<Point>& path,
                                           const std::vector<std::vector<Point>>& frames, ChenOrder order) const;
    std::vector<double> log_signature(const std::vector<Point>& nodes, ChenOrder order) const;

    CrossedGroups exact_;
    RealCrossedGroups real_;
    std::vector<std::vector<int>> form_index_;  // form_index_[p][subset rank] → basis index of Z_I in degree −(p−1)
    std::vector<std::vector<std::vector<int>>> subsets_;
};

}  // namespace dgl
