#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fqtrace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// q^e for integer e of either sign, exact.
inline Rat rat_pow(long q, long e) {
    if (e >= 0) {
        Int n = boost::multiprecision::pow(Int(q), static_cast<unsigned>(e));
        return Rat(n);
    }
    Int n = boost::multiprecision::pow(Int(q), static_cast<unsigned>(-e));
    return Rat(1) / Rat(n);
}

inline Rat rat_pow(const Rat& x, long e) {
    if (e < 0) {
        if (x == 0) throw std::domain_error("rat_pow: 0 to negative power");
        return Rat(1) / rat_pow(x, -e);
    }
    Rat r = 1;
    Rat b = x;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// "num/den" with den always printed; stable across platforms, used in reports.
inline std::string rat_str(const Rat& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

} // namespace fqtrace
