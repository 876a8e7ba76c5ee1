#pragma once

#include "fqtrace/class_vector.hpp"

#include <vector>

namespace fqtrace {

// Exact rational matrix helpers (small dense systems).
using RatMatrix = std::vector<std::vector<Rat>>;

// Inverse of a nonsingular rational matrix; throws std::domain_error if
// the matrix is singular.
RatMatrix mat_inverse(RatMatrix a);

// Reduced row echelon form in place; returns the pivot column of each
// surviving row (rows are compacted, zero rows dropped).
std::vector<size_t> rref(RatMatrix& a);

// A generating family for a subspace of the weighted class-line space,
// together with its exact Gram matrix and a greedily selected maximal
// independent subset ("pivots").  The measure unit carried by every
// pairing is stripped from the stored matrices and restored by the trace
// routines, which know the degree bookkeeping.
struct SubspaceBasis {
    int q = 2;
    std::vector<ClassVector> gens;
    RatMatrix gram;              // gram[i][j] = <gens[i], gens[j]> (unit stripped)
    std::vector<size_t> pivots;  // maximal independent subset, in input order
    RatMatrix gram_inv;          // inverse of gram restricted to pivots

    size_t rank() const { return pivots.size(); }
    bool empty() const { return pivots.empty(); }
};

SubspaceBasis build_subspace(int q, std::vector<ClassVector> gens);

// Solve G_pp x = rhs on the pivot block (rhs indexed like pivots).
std::vector<Rat> solve_on_pivots(const SubspaceBasis& B, const std::vector<Rat>& rhs);

// Orthogonal projection of v onto span(B), materialized as a vector.
ClassVector project(const SubspaceBasis& B, const ClassVector& v);

// Squared distance of v from span(B) (unit stripped).  Zero iff v lies in
// the span; this is the exact membership test.
Rat residual_norm2(const SubspaceBasis& B, const ClassVector& v);

bool in_span(const SubspaceBasis& B, const ClassVector& v);

// tr(P_B · A) for a linear map A given by the images of the pivot
// generators (pivot_images[i] = A applied to gens[pivots[i]]).  The
// returned scalar is dimensionless; callers restore measure degrees.
Rat projected_trace_raw(const SubspaceBasis& B,
                        const std::vector<ClassVector>& pivot_images);

} // namespace fqtrace
