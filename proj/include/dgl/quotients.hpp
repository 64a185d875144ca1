#pragma once

// Quotients of 𝔣 computed block by block: the semiabelianization
// 𝔣/([𝔣^{≤−1},𝔣^{≤−1}] + d[𝔣^{≤−1},𝔣^{≤−1}]), the abelianization of
// 𝔣̃ (𝔣̃⁰ = [FL,FL], 𝔣̃ⁱ = 𝔣ⁱ below), the crossed-module quotient in
// degrees ≥ −1, the lower central series, and the finite presentation of
// 𝔣_sab/γ_{d+1} by structure constants.

#include "dgl/free_lie.hpp"
#include "dgl/io.hpp"
#include "dgl/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace dgl {

// [𝔣^{≤−1},𝔣^{≤−1}] is exactly the span of the multihomogeneous components with
// at least two letters Z_I, |I| ≥ 2 (the lowest bracket node holding two such
// letters is a bracket of two negative elements, and that set is an ideal).
// A negative-degree block therefore reduces to its part with one higher
// letter; QuotientBlock stores relations and representatives in that part.
class QuotientBlock {
public:
    int ell = 0, degree = 0;
    Content alpha{};
    long ambient_dim = 0;    // dimension of the block of 𝔣 (or of [FL,FL] in degree 0)
    long relation_rank = 0;  // rank of the relation subspace inside it
    long dim() const { return static_cast<long>(basis.size()); }

    std::vector<std::vector<Letter>> basis;  // right-normed representatives
    std::vector<RawVec> basis_vectors;       // their realizations

    // Class of a Lie element of this block in the chosen basis.
    std::vector<Rational> coordinates(const RawVec& v) const;
    bool is_relation(const RawVec& v) const;

    bool project = false;  // reduce through the single-higher-letter part
    QuotientReducer reducer;
};

struct QuotientSlice {
    int i = 0, ell = 0;
    long ambient_dim = 0, relation_rank = 0, dim = 0;
    std::vector<std::string> labels;
};

QuotientReducer::RVec to_rvec(const RawVec& v);

class Semiabelianization {
public:
    explicit Semiabelianization(int n);
    int n() const { return n_; }
    const QuotientBlock& block(int ell, const Content& alpha) const;
    QuotientSlice slice(int i, int ell) const;
    // Rank of the induced d: block(ℓ, α) → block(ℓ+1, α).
    long d_rank(int ell, const Content& alpha) const;
    long d_rank(int i, int ell) const;
    long kernel_dimension(int i, int ell) const;
    long cohomology_dimension(int i, int ell) const;

private:
    int n_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Content>, std::unique_ptr<QuotientBlock>> blocks_;
    mutable std::map<std::pair<int, Content>, long> ranks_;
};

class Abelianization {
public:
    explicit Abelianization(int n);
    int n() const { return n_; }
    const QuotientBlock& block(int ell, const Content& alpha) const;
    QuotientSlice slice(int i, int ell) const;

private:
    int n_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, Content>, std::unique_ptr<QuotientBlock>> blocks_;
};

QuotientSlice semiabelianization_slice(int n, int i, int ell);
QuotientSlice abelianization_slice(int n, int i, int ell);

// 𝔤^{≥−1} = 𝔣⁰ ⊕ 𝔣^{−1}/d[𝔣^{−1},𝔣^{−1}], per letter count.
struct CrossedModuleQuotient {
    struct Row {
        int ell;
        long dim0, dim1, d_rank, H0, H1;  // d_rank: 𝔤^{−1}(ℓ) → 𝔤⁰(ℓ+1)
    };
    int n = 0, max_letters = 0;
    std::vector<Row> rows;
};
CrossedModuleQuotient crossed_module_quotient(int n, int max_letters);

// γ_r ∩ 𝔣(i,ℓ) by iterated bracket spans; the quotient dim is reported.
QuotientSlice lower_central_series_slice(int n, int r, int i, int ell);

// Finite presentation of 𝔤ₙ,d = 𝔣_sab/γ_{d+1}.
struct NilpotentCrossedComplex {
    using Row = std::vector<std::pair<int, Rational>>;  // sparse, sorted by index

    struct Degree {
        std::vector<std::string> labels;
        std::vector<int> letters;      // letter count of each basis element
        std::vector<RawVec> vectors;   // realizations in the tensor algebra
        int dim() const { return static_cast<int>(labels.size()); }
    };

    int n = 0, cls = 0;
    std::vector<Degree> degrees;  // degrees[k] is degree −k
    // bracket[k][a][b] = [e_a, f_b], e_a ∈ 𝔤⁰, f_b ∈ 𝔤^{−k}, expanded in 𝔤^{−k}.
    std::vector<std::vector<std::vector<Row>>> bracket;
    // differential[k][b] = d f_b ∈ 𝔤^{−k+1}; differential[0] is empty.
    std::vector<std::vector<Row>> differential;

    int depth() const { return static_cast<int>(degrees.size()) - 1; }
    int dim(int k) const { return k < static_cast<int>(degrees.size()) ? degrees[k].dim() : 0; }
    // Index of the single-letter basis element Z_c in its degree, or −1.
    int letter_index(Letter c) const;
    // Violated axioms, one message each; empty when all hold.
    std::vector<std::string> validate() const;
};

NilpotentCrossedComplex extract_structure_constants(int n, int d);
json crossed_complex_to_json(const NilpotentCrossedComplex& c);
NilpotentCrossedComplex crossed_complex_from_json(const json& j);

}  // namespace dgl
