#pragma once

#include "fqtrace/places.hpp"
#include "fqtrace/rational.hpp"

#include <vector>

namespace fqtrace {

// A finite set of places containing infinity, with gcd of residue degrees 1
// so that the norm map onto the class line q^Z is surjective.  Carries the
// combinatorics of the monoid of monic polynomials coprime to the finite
// places of the set: its counting sequence N and Moebius sequence M, with
// generating functions
//   N(x) = (prod_{P in S} (1 - x^{deg P})) / (1 - q x),   M(x) = 1 / N(x).
struct PlaceSet {
    int q = 0;
    std::vector<Place> places; // places[0] is infinity, the rest are finite

    // conductor shift: prod_v q_v^{1 + n(v)} = q^{k0}
    int k0 = 0;
    // valuation vector u of a fixed idele of norm q^{-1}: sum_v deg_v u_v = 1
    std::vector<long> u;

    size_t size() const { return places.size(); }
    const Place& infinity() const { return places[0]; }

    // coefficients of the counting / Moebius sequences, exact
    std::vector<Rat> counting_seq(size_t len) const; // N_0..N_{len-1}
    std::vector<Rat> moebius_seq(size_t len) const;  // M_0..M_{len-1}

    // product of (1 - x^{deg P}) over the finite places: the common
    // denominator of the Moebius generating function (little-endian)
    std::vector<Rat> finite_prod_poly() const;
};

PlaceSet make_place_set(int q, std::vector<Place> places);
PlaceSet parse_place_set(int q, const std::vector<std::string>& labels);

} // namespace fqtrace
