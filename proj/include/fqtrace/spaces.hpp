#pragma once

#include "fqtrace/periodize.hpp"
#include "fqtrace/place_set.hpp"
#include "fqtrace/semilocal_function.hpp"
#include "fqtrace/subspace.hpp"

#include <vector>

namespace fqtrace {

// The cut test-function space at height q^k: functions with both their own
// support and their Fourier transform's support inside the closed q^k-norm
// ball.  In the basis of pure ball-tensors  ⊗_v 1_{π^{m_v}O_v}  both support
// conditions become two-sided bounds on the weighted exponent sum
//       -k  <=  Σ_v deg_v·m_v  <=  k - Σ_v deg_v·n_v,
// because a ball-tensor's support has maximal norm q^{-Σ deg·m} and its
// Fourier transform is the scaled ball-tensor at -m-n.  (Any member
// function must satisfy the bounds coefficientwise: evaluate at a corner
// point of an extremal contributing box.)  The family is a basis, so the
// cut space needs no kernel computation; the 0-subspace imposes just the
// two rows f(0) = Σ_m c_m and ∫f = Σ_m c_m·vol(box_m).
struct CutSpace {
    const PlaceSet* S = nullptr;
    long k = 0;
    long depth = 0;                     // exponents confined to [-depth, depth]
    std::vector<std::vector<long>> exps; // one exponent vector per basis tensor

    SemiLocalFunction tensor_at(size_t i) const;
    size_t size() const { return exps.size(); }
    // value at zero and integral of tensor i (integral with the measure
    // unit stripped)
    Rat value0_at(size_t) const { return Rat(1); }
    Rat integral_at(size_t i) const;
    // basis of the 0-subspace as coefficient vectors over the tensors
    std::vector<std::vector<Rat>> zero_space_coeffs() const;
};

CutSpace build_cut_space(const PlaceSet& S, long k, long depth);

// Literal constraint-kernel construction over the shell/ball atom family
// (the redundant presentation): used to cross-validate the ball-tensor
// route on small instances.  Returns a basis of the same cut space as
// coefficient combinations materialized into functions.
std::vector<SemiLocalFunction> build_cut_space_by_kernel(const PlaceSet& S, long k,
                                                         long depth);

// Working data of the trace engine at one height: the three nested
// invariant subspaces and the two distinguished window vectors.  Holds a
// pointer to the place set, which the caller must keep alive.
struct EngineSpaces {
    const PlaceSet* S = nullptr;
    long k = 0;
    long depth = 0;     // saturated depth actually used
    bool saturated = false;
    long dim_q0 = 0;
    long dim_qbar0 = 0;
    long dim_qfull = 0;

    ClassVector ew_f1;  // window indicator: unit-orbit sum of the height window
    ClassVector ew_f0;  // its Fourier partner
    SubspaceBasis qbar0; // span of monoid-orbit sums of the 0-space (finite windows)
    SubspaceBasis q0;    // span of unit-orbit sums (Moebius transforms of the above)
    SubspaceBasis qfull; // q0 plus the two distinguished directions

    // exact squared residual of the window vector against the 0-space
    Rat window_residual2 = 0;
};

// Normalized sum of single-orbit indicators covering the norm window
// [c_S/Λ, Λ]; its unit-orbit sum is exactly the window indicator vector.
SemiLocalFunction window_function(const PlaceSet& S, long k);

// Build the engine at height q^k, saturating the image dimension in depth
// (depth, depth+1, depth+2 must agree twice).  depth0 < 0 picks the
// default starting depth k + |n(infinity)| + 1.
EngineSpaces build_engine(const PlaceSet& S, long k, long depth0 = -1);

} // namespace fqtrace
