#pragma once

#include "fqtrace/hfunction.hpp"
#include "fqtrace/periodize.hpp"
#include "fqtrace/spaces.hpp"

namespace fqtrace {

// Action of a finitely supported class multiplier on class-line vectors:
// (U_h v)(d) = sum_e h(e) v(d+e).  One application carries one unit of the
// multiplicative normalization; the trace routines restore it.
ClassVector apply_h(const HFunction& h, const ClassVector& v);

// tr(P_B U_h) on the span held by B; exact, one unit of log q.
GradedScalar trace_of(const SubspaceBasis& B, const HFunction& h);

struct EngineTraces {
    GradedScalar tr_q0;
    GradedScalar tr_qbar0;
    GradedScalar tr_qbar0_conj;
    GradedScalar tr_qfull;
};

// The three invariant-subspace traces.  The monoid-side trace is also
// recomputed by pushing the unit-side generators through the counting
// transform (an independent tail-fit path); both values are returned so
// callers can insist they agree.
EngineTraces traces_for(const EngineSpaces& E, const HFunction& h);

// Exact compression eigenvalue of (q-1) times the single shift by e on the
// window direction modulo the 0-subspace, for e <= 0: shifting scales each
// window class by q^{-e} and pushes -e of them past the cut, so
//   lam(e) = (q-1) q^{-e} (sum of q^j over the surviving window offsets)
//                        / (sum of q^j over all window offsets),
// which is (q-1) q^{-e} (q^{k0} - q^{2k+1+e}) / (q^{k0} - q^{2k+1}) while the
// translate still meets the window and exactly 0 once it has left.
Rat window_eigenvalue(const PlaceSet& S, long k, long e);

// Checks, exactly, that the full-space compression of (q-1) * shift-by-e
// moves the window vector by lam(e) times itself modulo the 0-subspace.
bool window_eigen_congruence(const EngineSpaces& E, long e);

} // namespace fqtrace
