#pragma once

// The free dg-Lie algebra on the Z_I, I ⊆ {1..n} nonempty, deg Z_I = 1 − |I|,
// with dZ_I = ½ Σ_{(J,K)} ε(J,K) [Z_J, Z_K] over ordered splittings I = J ⊔ K,
// ε(J,K) = (−1)^{|J|−1} σ(J,K), σ the shuffle sign.  Lie elements are handled
// through their realizations in the tensor algebra.

#include "dgl/tensor.hpp"

#include <map>
#include <memory>
#include <vector>

namespace dgl {

class LieExpr {
public:
    static LieExpr leaf(Letter c);
    static LieExpr bracket(const LieExpr& a, const LieExpr& b);
    // [g1,[g2,[...,[g_{k-1},g_k]]]]
    static LieExpr right_normed(const std::vector<Letter>& g);

    bool is_leaf() const { return node_->left == nullptr; }
    Letter letter() const { return node_->c; }
    LieExpr left() const { return LieExpr(node_->left); }
    LieExpr right() const { return LieExpr(node_->right); }
    int degree() const { return node_->degree; }
    int letter_count() const { return node_->count; }
    std::string str() const;

private:
    struct Node {
        Letter c = 0;
        std::shared_ptr<const Node> left, right;
        int degree = 0, count = 1;
    };
    explicit LieExpr(std::shared_ptr<const Node> p) : node_(std::move(p)) {}
    std::shared_ptr<const Node> node_;
};

using LieCombination = std::vector<std::pair<Rational, LieExpr>>;

template <class S>
BasicTensor<S> realize(const LieExpr& e, int n, int L)
{
    if (e.is_leaf()) return BasicTensor<S>::letter(n, L, e.letter());
    if (e.letter_count() > L) return BasicTensor<S>(n, L);
    return graded_commutator(realize<S>(e.left(), n, L), realize<S>(e.right(), n, L));
}
Tensor realize(const LieCombination& c, int n, int L);

// Sparse word vectors with machine-integer coefficients: the fast path used by
// the rank computations.  Entries sorted by word, merged, nonzero.
using RawVec = std::vector<std::pair<std::uint64_t, long long>>;
void raw_normalize(RawVec& v);
RawVec raw_right_normed(const std::vector<Letter>& g);
// d applied to a homogeneous-length vector; words longer than max_letters dropped.
RawVec raw_differential(const RawVec& v, int max_letters = kMaxWordLetters);
// xy − (−1)^{dx·dy} yx; words longer than max_letters dropped.
RawVec raw_bracket(const RawVec& x, int dx, const RawVec& y, int dy, int max_letters = kMaxWordLetters);
// Number of letters Z_I with |I| ≥ 2 in a word.
int high_letter_count(Word w);
// Keeps the words with exactly one letter of size ≥ 2.
RawVec raw_single_high_part(const RawVec& v);
Tensor raw_to_tensor(const RawVec& v, int n, int L);
RawVec tensor_to_raw(const Tensor& t);  // coefficients must be integers
// Exact test of d(d(v)) = 0 without materializing the sorted result.
bool raw_d_squared_vanishes(const RawVec& v);

// dZ_c as 2-letter words with integer coefficients (empty for |I| = 1).
const std::vector<std::pair<Word, long long>>& differential_table(Letter c);

// Index-content blocks.  d and the bracket preserve the multiset of indices,
// so every slice splits into blocks (ℓ, α) with i = ℓ − |α|.
std::vector<Content> block_contents(int n, int ell, int i);
std::vector<std::vector<Letter>> multisets_with_content(int n, int ell, const Content& alpha);
// Right-normed sequences over a multiset whose innermost letter is the largest
// letter; they span the multihomogeneous component.
// innermost = 0 picks the largest letter.
std::vector<std::vector<Letter>> jacobi_monomials(const std::vector<Letter>& multiset, Letter innermost = 0);
// Every distinct ordering of the multiset.
std::vector<std::vector<Letter>> all_monomials(const std::vector<Letter>& multiset);

// Index relabelling i ↦ π(i) (π given 0-based on 0..n−1).  Z_I ↦ s_π(I) Z_{π(I)},
// s_π(I) the sign sorting (π(i₁),...,π(i_p)); d commutes with it.
Letter relabel_letter(Letter c, const std::array<int, kMaxN>& pi, int* sign = nullptr);
Tensor relabel(const Tensor& t, const std::array<int, kMaxN>& pi);
// True if the sorted multiset is the smallest in its S_n orbit.
bool is_orbit_representative(const std::vector<Letter>& multiset, int n);

struct LieBlock {
    int ell = 0;
    int degree = 0;
    Content alpha{};
    std::vector<std::vector<Letter>> monomials;  // spanning family
    std::vector<std::size_t> basis;              // indices of a basis inside monomials
};
LieBlock lie_block(int n, int ell, const Content& alpha);

class ConstantForm;

class FreeDGLie {
public:
    FreeDGLie(int n, int max_letters);
    int n() const { return n_; }
    int max_letters() const { return L_; }

    std::vector<Letter> generators() const { return alphabet(n_); }
    LieCombination differential_on_generator(Letter c) const;

    template <class S>
    BasicTensor<S> differential(const BasicTensor<S>& t) const
    {
        std::vector<typename BasicTensor<S>::Term> out;
        for (const auto& [w, c] : t.terms()) {
            int s = 1;
            for (int j = 0; j < w.size(); ++j) {
                Letter l = w[j];
                if (w.size() + 1 <= t.max_letters())
                    for (const auto& [w2, c2] : differential_table(l))
                        out.push_back({w.splice(j, w2), c * S(static_cast<long>(s * c2))});
                if (letter_degree(l) % 2 != 0) s = -s;
            }
        }
        return BasicTensor<S>::from_terms(t.n(), t.max_letters(), std::move(out));
    }

    std::vector<LieExpr> lie_spanning_set(int i, int ell) const;
    long bigraded_dimension(int i, int ell) const;
    long cohomology_dimension(int i, int ell) const;

    struct DimsRow {
        int i, ell;
        long dim, ker, im, H;
    };
    // All slices with 1 ≤ ℓ ≤ max_letters (d of the top slice is computed one letter higher).
    std::vector<DimsRow> dims_report() const;

    ConstantForm universal_connection() const;

private:
    // Rank of d on the block (ℓ, α).
    long block_d_rank(int ell, const Content& alpha) const;
    long bigraded_dimension_block(int ell, const Content& alpha) const;
    int n_, L_;
    mutable std::map<std::pair<int, Content>, long> rank_cache_, dim_cache_;
};

// Letter-count and weight dimensions of 𝔣 from the super-PBW identity
// Π_even (1 − u^ℓ v^w)^{−a} Π_odd (1 + u^ℓ v^w)^{a} = 1/(1 − u((1+v)^n − 1)).
// Returns a[ℓ][w] = dim 𝔣^{ℓ−w} with ℓ letters, for ℓ ≤ max_letters.
std::vector<std::vector<long>> pbw_dimensions(int n, int max_letters);

}  // namespace dgl
