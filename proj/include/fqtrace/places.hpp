#pragma once

#include "fqtrace/fq.hpp"
#include "fqtrace/rational.hpp"

#include <string>
#include <vector>

namespace fqtrace {

// A place of the rational function field F_q(t): either the degree-one place
// at infinity (uniformizer 1/t) or a monic irreducible polynomial P.
//
// `n` is the conductor exponent of the fixed differential character: 0 at
// every finite place and -2 at infinity.  It is even everywhere, which keeps
// all self-dual volume factors q_v^{n/2} rational.
struct Place {
    int q = 0;          // base field size
    bool infinite = false;
    FqPoly prime;       // meaningful iff !infinite
    int deg = 1;        // residue degree f_v
    int n = 0;          // character conductor exponent

    long qv_long() const {
        long r = 1;
        for (int i = 0; i < deg; ++i) r *= q;
        return r;
    }
    Rat qv_pow(long e) const; // q_v^e exact

    std::string label() const { return infinite ? "inf" : prime.str(); }

    friend bool operator==(const Place& a, const Place& b) {
        return a.q == b.q && a.infinite == b.infinite &&
               (a.infinite || a.prime == b.prime);
    }
};

Place infinite_place(int q);
Place finite_place(FqPoly prime);
// Parse "inf" or a polynomial in t with digit coefficients, e.g. "t",
// "t+1", "t^2+t+1", "t^2+2*t+2".
Place parse_place(int q, const std::string& text);

// All places of degree <= max_deg: infinity first, then finite places by
// degree and, within a degree, by the deterministic monic enumeration order.
std::vector<Place> enumerate_places(int q, int max_deg);

// Number of monic irreducibles of exact degree d over F_q (by counting).
long count_irreducibles(int q, int d);

} // namespace fqtrace
