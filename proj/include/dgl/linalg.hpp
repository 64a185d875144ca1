#pragma once

// Sparse exact row reduction.  Columns are opaque 64-bit keys (packed words,
// current monomials, ...).  Rows are kept primitive over the integers: every
// elimination step is the fraction-free combination p·v − v_c·row followed by
// division by the content, so no rational arithmetic happens in the inner loop.

#include "dgl/scalar.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dgl {

struct SparseVec {
    std::vector<std::pair<std::uint64_t, Integer>> e;  // sorted by column, nonzero
    bool empty() const { return e.empty(); }
};

// Sorts, merges and clears a scaled rational vector into a primitive integer
// one; returns the scale factor s with v = s · result.
Rational make_primitive(std::vector<std::pair<std::uint64_t, Rational>> v, SparseVec& out);
void make_primitive(SparseVec& v);

class Echelon {
public:
    // Inserts v; returns true if it increased the rank.
    bool insert(SparseVec v);
    // Leading-column reduction only; zero iff v lies in the row span.
    bool in_span(SparseVec v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    // Reduces v until its leading column has no pivot (or v is zero).
    void reduce_leading(SparseVec& v) const;
    std::vector<SparseVec> rows_;
    std::unordered_map<std::uint64_t, std::size_t> pivot_;
};

// Reduction with bookkeeping: "relation" rows span a subspace R, "basis" rows
// are chosen representatives of a complement.  coordinates(v) expresses
// v mod R in the chosen basis.  Works over the rationals with fully reduced
// rows; used where canonical representatives are needed.
class QuotientReducer {
public:
    using RVec = std::vector<std::pair<std::uint64_t, Rational>>;

    // Returns true if r was independent of everything inserted so far.
    bool add_relation(const RVec& r);
    // Returns the new basis index, or -1 if v already lies in R + basis span.
    int add_basis_candidate(const RVec& v);
    std::size_t relation_rank() const { return rel_rank_; }
    std::size_t basis_size() const { return nbasis_; }

    // Coordinates of v modulo R in the basis.  Throws if v is outside R + span.
    std::vector<Rational> coordinates(const RVec& v) const;
    // True if v lies in R.
    bool is_relation(const RVec& v) const;

private:
    struct Row {
        RVec v;                    // leading coefficient 1
        std::vector<Rational> cert;  // coefficients on basis candidates (empty for pure relations)
    };
    // Reduce fully; accumulates certificate contributions into cert.
    void reduce(RVec& v, std::vector<Rational>& cert) const;
    bool insert(RVec v, std::vector<Rational> cert);

    std::vector<Row> rows_;
    std::unordered_map<std::uint64_t, std::size_t> pivot_;
    std::size_t rel_rank_ = 0;
    std::size_t nbasis_ = 0;
};

}  // namespace dgl
