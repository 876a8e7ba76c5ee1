#pragma once

#include "fqtrace/graded.hpp"
#include "fqtrace/linrec.hpp"
#include "fqtrace/rational.hpp"

#include <vector>

namespace fqtrace {

// A function on the integer class line (classes d index the norm q^d),
// vanishing for large d, explicit on a window, and eventually linearly
// recurrent going downward:
//   d > hi()        : 0
//   lo <= d <= hi() : win[d - lo]
//   d < lo          : tail.at(lo - 1 - d)
struct ClassVector {
    long lo = 0;
    std::vector<Rat> win;
    LinRecSeq tail;

    static ClassVector zero() { return ClassVector{}; }
    static ClassVector finite(long lo, std::vector<Rat> values);

    long hi() const { return lo + static_cast<long>(win.size()) - 1; }
    Rat at(long d) const;
    bool tail_is_zero() const { return tail.is_zero(); }
    bool is_zero() const;

    // grow the window downward so that lo becomes new_lo (pulls tail values
    // into the window); new_lo <= lo
    void extend_down(long new_lo);
    // drop zero values at the top of the window
    void trim_top();

    ClassVector operator+(const ClassVector& o) const;
    ClassVector operator-(const ClassVector& o) const;
    ClassVector scaled(const Rat& c) const;
    // v'(d) = v(d + e)
    ClassVector arg_shifted(long e) const;

    friend bool operator==(const ClassVector& a, const ClassVector& b);
    friend bool operator!=(const ClassVector& a, const ClassVector& b) {
        return !(a == b);
    }
};

// sum_d q^d u(d) v(d), one unit of log q; exact, with the tail part summed
// in closed form.  Throws std::domain_error if the tail sum diverges.
GradedScalar inner_product(const ClassVector& u, const ClassVector& v, int q);

// sum_d q^d u(d), one unit of log q (the pairing with the constant 1)
GradedScalar weighted_sum(const ClassVector& u, int q);

} // namespace fqtrace
