#pragma once

#include "fqtrace/class_vector.hpp"
#include "fqtrace/semilocal_function.hpp"

namespace fqtrace {

// Orbit sums over the global points hiding inside a place set S.
//
// The norm-one global units split into F_q^* times the free abelian group on
// the finite places of S (principal S-units), and the norm-descending monoid
// adds the monic polynomials coprime to S.  Summing a semi-local function
// over one orbit per class d gives a function on the class line:
//
//   e_value     : sum over the unit group orbit of norm q^d
//   ebar_value  : sum over the full monoid orbit (units times coprime monics)
//
// Both sums are finite for every tensor of compactly-bottomed local factors
// because the infinite place caps the total degree.
Rat e_value(const SemiLocalFunction& f, long d);
Rat ebar_value(const SemiLocalFunction& f, long d);

// The two periodizations as exact class-line vectors: explicit window plus a
// certified linearly recurrent tail.
//
// The monoid sum obeys a Poisson-type reflection
//   ebar(f)(d) = q^{-d} ebar(fourier f)(-d) + q^{-d} integral(f) - f(0),
// so below the reflected support it is exactly geometric-plus-constant; the
// unit-group sum is the Moebius transform of the monoid sum along classes,
//   e(f)(d) = sum_{a >= 0} M_a ebar(f)(d+a),
// which keeps an annihilator of the form chi_M(z) (z-1)(z-q).  Tails are
// fitted against these annihilators and every surplus sample is verified
// exactly, so a wrong window or annihilator cannot slip through silently.
ClassVector periodize_ebar(const SemiLocalFunction& f);
ClassVector periodize_e(const SemiLocalFunction& f);

// Moebius transform along classes of a vector with no tail (finite support):
// (conv_M v)(d) = sum_{a>=0} M_a v(d+a), exact including its infinite tail.
ClassVector conv_moebius(const PlaceSet& S, const ClassVector& v);

// Counting transform along classes, evaluated pointwise:
// (conv_N v)(d) = sum_{a>=0} N_a v(d+a); the sum is finite because v
// vanishes above its window.
Rat conv_counting_value(const PlaceSet& S, const ClassVector& v, long d);

// Counting transform as an exact class-line vector, inverse of
// conv_moebius.  The input may carry a certified tail; the result's tail
// is fitted against the product annihilator chi_{v-tail}(z) (z-1) (z-q)
// below the transient region, with surplus samples verified exactly.
ClassVector conv_counting(const PlaceSet& S, const ClassVector& v);

} // namespace fqtrace
