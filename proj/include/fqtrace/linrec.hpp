#pragma once

#include "fqtrace/rational.hpp"

#include <utility>
#include <vector>

namespace fqtrace {

// Exact eventually-linearly-recurrent rational sequence u(0), u(1), ...:
//   u(s) = sum_{i} rec[i] * u(s-1-i)   for all s >= init.size(),
// with init.size() >= rec.size().  The generating function sum u(s) y^s is
// rational; reduce() brings (rec, init) to the canonical minimal form coming
// from the reduced fraction, which makes equality testing exact.
struct LinRecSeq {
    std::vector<Rat> rec;
    std::vector<Rat> init;

    static LinRecSeq zero();
    static LinRecSeq constant(const Rat& c);
    static LinRecSeq geometric(const Rat& scale, const Rat& ratio);
    // coefficients of num(y)/den(y), den(0) != 0
    static LinRecSeq from_gf(std::vector<Rat> num, std::vector<Rat> den);

    bool is_zero() const;
    Rat at(long s) const;
    std::vector<Rat> first(size_t n) const;

    // canonical reduced generating function (num, den), den[0] = 1, coprime
    std::pair<std::vector<Rat>, std::vector<Rat>> canonical_gf() const;
    void reduce();

    LinRecSeq shifted(long s0) const;            // s |-> u(s + s0), s0 >= 0
    LinRecSeq ratio_scaled(const Rat& rho) const; // s |-> rho^s u(s)
    LinRecSeq scaled(const Rat& c) const;

    friend LinRecSeq operator+(const LinRecSeq& a, const LinRecSeq& b);
    friend LinRecSeq operator-(const LinRecSeq& a, const LinRecSeq& b);

    // pointwise (Hadamard) product; exact, via the product of the
    // characteristic polynomials computed from power sums
    static LinRecSeq hadamard(const LinRecSeq& a, const LinRecSeq& b);

    // exact equality of the sequences (not of representations)
    friend bool operator==(const LinRecSeq& a, const LinRecSeq& b);

    // sum_{s>=0} u(s); throws std::domain_error when the reduced generating
    // function has a pole in the closed unit disk (divergent series)
    Rat sum_all() const;
};

// Fit a sequence against a known-valid annihilator: given the characteristic
// polynomial chi (little-endian, monic leading), build the sequence whose
// first `len` values are `samples` and which satisfies the chi-recurrence
// from the start; the caller supplies extra samples beyond the recurrence
// order, which are verified exactly (throws on mismatch).
LinRecSeq fit_with_annihilator(const std::vector<Rat>& chi,
                               const std::vector<Rat>& samples);

// All roots of p (little-endian, any nonzero poly) strictly inside the unit
// circle, decided exactly over the rationals (Schur-Cohn).
bool roots_strictly_inside_unit(std::vector<Rat> p);

// dense polynomial helpers over Rat (little-endian), used by the sequence
// algebra and by callers assembling annihilators
std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> poly_add(const std::vector<Rat>& a, const std::vector<Rat>& b);
Rat poly_eval(const std::vector<Rat>& p, const Rat& x);
std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b);
std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a,
                                                          const std::vector<Rat>& b);

} // namespace fqtrace
