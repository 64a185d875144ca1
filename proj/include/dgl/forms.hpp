#pragma once

// Polynomial forms on kⁿ, currents supported at 0, and forms with constant
// tensor coefficients.  Index sets are bitmasks (bit k = index k+1); the basis
// form dt_I is the wedge in increasing index order.

#include "dgl/free_lie.hpp"
#include "dgl/tensor.hpp"

#include <array>
#include <map>

namespace dgl {

using Monomial = std::array<std::uint8_t, kMaxN>;  // exponents of t₁..t₆

int monomial_degree(const Monomial& a);
Integer monomial_factorial(const Monomial& a);  // α!
int mask_size(unsigned mask);
// dt_k ∧ dt_I = sign · dt_{I∪k}; 0 if k ∈ I.  k is 0-based.
int wedge_letter_sign(int k, unsigned mask);
// dt_I ∧ dt_J = sign · dt_{I∪J}; 0 if they meet.
int wedge_sign(unsigned I, unsigned J);
std::string mask_str(unsigned mask);  // "12"

using FormKey = std::pair<Monomial, std::uint8_t>;

class PolyForm {
public:
    PolyForm(int n, int p);
    static PolyForm term(int n, const Monomial& a, unsigned mask, const Rational& c = 1);
    int n() const { return n_; }
    int degree() const { return p_; }
    const std::map<FormKey, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Monomial& a, unsigned mask) const;
    void add(const Monomial& a, unsigned mask, const Rational& c);
    PolyForm& operator+=(const PolyForm& o);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    PolyForm scaled(const Rational& c) const;
    friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_; }

private:
    int n_, p_;
    std::map<FormKey, Rational> terms_;
};

// Functional ω ↦ Σ coeff · (∂^α ω_I)(0); homological degree p = |I|.
class Current {
public:
    Current(int n, int p);
    static Current delta(int n, const Monomial& a, unsigned mask, const Rational& c = 1);
    int n() const { return n_; }
    int degree() const { return p_; }
    const std::map<FormKey, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Monomial& a, unsigned mask, const Rational& c);
    Current& operator+=(const Current& o);
    friend Current operator+(Current a, const Current& b) { return a += b; }
    Current scaled(const Rational& c) const;
    friend bool operator==(const Current& a, const Current& b) { return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_; }
    std::string str() const;

private:
    int n_, p_;
    std::map<FormKey, Rational> terms_;
};

PolyForm de_rham_d(const PolyForm& w);
// Adjoint of de_rham_d; the zero current in degree 0.
Current boundary(const Current& c);
Rational pairing(const Current& c, const PolyForm& w);

// Right-normed degree-0 monomial [Z_{i1},[...,[Z_{i(p-1)},Z_{ip}]]] ↦ δ^{(e_{i1}+...+e_{i(p-2)})} on dt_{i(p-1)}dt_{ip}.
Current rho0(const LieExpr& m, int n);
// Any degree-0 Lie element with ≥ 2 letters, via the Dynkin–Specht–Wever projection.
Current rho0(const Tensor& x);
// Component of x with exactly one letter of size > 1, placed last: a₁…a_p Z_I ↦ δ^{(Σ e_a)}_I.
Current rho_minus_m(const Tensor& x, int m);
Current rho_minus_m(const LieExpr& m, int n);

long binomial(long n, long k);
long gamma_dimension(int p, int q, int n);
long gamma_closed_dimension(int p, int q, int n);
long schur_dimension(const std::vector<int>& partition, int n);
long closed_forms_dimension(int p, int d, int n);
std::vector<Monomial> monomials_of_degree(int n, int q);
std::vector<unsigned> masks_of_size(int n, int p);

enum class BracketSign {
    // [xω, yη] = (−1)^{|x|(|y|+|η|)} [x,y] ωη: the rule under which Σ Z_I dt_I is flat.
    Connection,
    // [xω, yη] = (−1)^{|ω||y|} [x,y] ωη: the ordinary Koszul rule for 𝔣 ⊗ Ω.
    Koszul,
};

// Σ_I x_I dt_I with x_I ∈ tensor algebra.
class ConstantForm {
public:
    ConstantForm(int n, int max_letters) : n_(n), L_(max_letters) {}
    int n() const { return n_; }
    int max_letters() const { return L_; }
    const std::map<unsigned, Tensor>& terms() const { return terms_; }
    void add(unsigned mask, const Tensor& x);
    bool is_zero() const { return terms_.empty(); }
    Tensor coefficient(unsigned mask) const;
    ConstantForm& operator+=(const ConstantForm& o);
    ConstantForm scaled(const Rational& c) const;
    friend bool operator==(const ConstantForm& a, const ConstantForm& b) { return a.terms_ == b.terms_; }

private:
    int n_, L_;
    std::map<unsigned, Tensor> terms_;
};

ConstantForm form_bracket(const ConstantForm& a, const ConstantForm& b, BracketSign rule = BracketSign::Connection);
// d_𝔣 on coefficients (the de Rham part vanishes on constant forms).
ConstantForm form_differential(const FreeDGLie& f, const ConstantForm& a);
// F = dA − ½[A, A].
ConstantForm curvature(const FreeDGLie& f, const ConstantForm& A, BracketSign rule = BracketSign::Connection);

}  // namespace dgl
