#pragma once

// Malcev exponentiation of 𝔤ₙ,d: group elements in log-coordinates, BCH
// products, the boundary and the action, and the composition calculus of the
// associated n-category.

#include "dgl/quotients.hpp"

#include <vector>

namespace dgl {

template <class S>
struct BasicGroupElement {
    int degree = 0;  // −i
    std::vector<S> coords;
};
using GroupElement = BasicGroupElement<Rational>;
using RealGroupElement = BasicGroupElement<double>;

json group_element_to_json(const GroupElement& g);
json group_element_to_json(const RealGroupElement& g);
GroupElement group_element_from_json(const json& j);

// log(e^X e^Y) = Σ c_w [w₁,[w₂,...,[w_{m−1},w_m]]] over words in {X=0, Y=1}
// of length ≤ cls (Dynkin's form), with words collected.
const std::vector<std::pair<std::vector<int>, Rational>>& dynkin_terms(int cls);

// A p-morphism (g_{−p+1}, ..., g_{−1}, g₀); comps[k] is g_{−k}.
template <class S>
struct BasicPMorphism {
    std::vector<BasicGroupElement<S>> comps;
    int dim() const { return static_cast<int>(comps.size()); }
};
using PMorphism = BasicPMorphism<Rational>;

template <class S>
class BasicCrossedGroups {
public:
    using Vec = std::vector<S>;
    using Elem = BasicGroupElement<S>;
    using Morph = BasicPMorphism<S>;

    explicit BasicCrossedGroups(const NilpotentCrossedComplex& c);
    const NilpotentCrossedComplex& complex() const { return c_; }
    int depth() const { return c_.depth(); }
    int dim(int k) const { return c_.dim(k); }
    int cls() const { return c_.cls; }

    // Lie structure on log-coordinates: the bracket of 𝔤⁰, the derived bracket
    // [x,y] = [dx,y] on 𝔤^{−1}, zero below.
    Vec lie_bracket(int k, const Vec& x, const Vec& y) const;
    Vec ad(const Vec& u, int k, const Vec& g) const;  // [u, g], u ∈ 𝔤⁰
    Vec d(int k, const Vec& x) const;                 // 𝔤^{−k} → 𝔤^{−k+1}
    Vec bch(int k, const Vec& x, const Vec& y) const;
    Vec exp_ad(const Vec& u, int k, const Vec& g) const;  // Σ ad_u^j g / j!

    Elem identity(int k) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem boundary(const Elem& g) const;
    Elem act(const Elem& u, const Elem& g) const;  // β(u)(g)
    bool equal(const Elem& a, const Elem& b, double tol = 0) const;

    // n-category structure.  The target of a 1-level step places ∂ on the left,
    // t(g_{−1}, g₀) = (∂(g_{−1})·g₀); this is the reading under which both
    // composition formulas below are functorial (see README).
    Morph unit(const Morph& x) const;
    Morph source(const Morph& x) const;
    Morph target(const Morph& x) const;
    Morph source(const Morph& x, int i) const;  // iterated down to an i-morphism
    Morph target(const Morph& x, int i) const;
    // x *₀ y = (g_{−k}·β(g₀)(h_{−k}) ..., g₀h₀);
    // x *_i y = (g_{−k}·h_{−k} for k ≥ i, h_{−k} for k < i), needs s_i(x) = t_i(y).
    Morph compose(const Morph& x, const Morph& y, int i, double tol = 0) const;
    bool equal(const Morph& a, const Morph& b, double tol = 0) const;

private:
    using SRow = std::vector<std::pair<int, S>>;
    NilpotentCrossedComplex c_;
    std::vector<std::vector<std::vector<SRow>>> br_;
    std::vector<std::vector<SRow>> dif_;
    std::vector<std::pair<std::vector<int>, S>> dyn_;
};

using CrossedGroups = BasicCrossedGroups<Rational>;
using RealCrossedGroups = BasicCrossedGroups<double>;

// Realization of degree-0 log-coordinates in the tensor algebra (L = class).
Tensor realize_degree0(const NilpotentCrossedComplex& c, const std::vector<Rational>& x);
RealTensor realize_degree0(const NilpotentCrossedComplex& c, const std::vector<double>& x);

}  // namespace dgl
