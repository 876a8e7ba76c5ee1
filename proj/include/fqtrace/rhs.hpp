#pragma once

#include "fqtrace/hfunction.hpp"
#include "fqtrace/place_set.hpp"
#include "fqtrace/shell_function.hpp"

namespace fqtrace {

// Arithmetic (explicit) side of the height-q^k trace comparison.

// Logarithmic volume of the norm window [q^{-k}, q^k]: one unit per class
// it contains, i.e. 2k+1 units of log q.
GradedScalar window_log_volume(long k);

// Pullback of the class multiplier to the valuation shells of one place:
// an element of valuation j has norm class -deg(v) * j, so shell j carries
// h(-deg(v) * j); classes away from deg(v) * Z are invisible to v.
ShellFunction pullback_to_place(const HFunction& h, const Place& v);

// Principal-value pairing of the pullback against 1/|1-x| at one place;
// one unit of log q.
GradedScalar place_pv_term(const HFunction& h, const Place& v);

// The assembled explicit side: main window term, the two boundary weights,
// and the principal-value sum over the places of S.
struct ExplicitSide {
    GradedScalar main;    // 2 h(0) (2k+1) units
    GradedScalar hat0;    // sum_e h(e)
    GradedScalar hat1;    // sum_e h(e) q^{-e}
    GradedScalar pv_sum;  // sum of the per-place principal values
    GradedScalar total;   // main - hat0 - hat1 + pv_sum
};
ExplicitSide explicit_side(const PlaceSet& S, long k, const HFunction& h);

// A place w of degree r sees only the classes r*Z; when h is supported
// strictly inside (-r, r), its pullback at w is a multiple of the unit
// shell and the principal value vanishes.  Returns that exact vanishing.
bool pv_vanishes_at(const HFunction& h, const Place& w);

} // namespace fqtrace
