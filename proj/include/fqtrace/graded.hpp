#pragma once

#include "fqtrace/rational.hpp"

#include <stdexcept>
#include <string>

namespace fqtrace {

// A rational multiple of (log q)^degree, kept exact by never expanding the
// transcendental factor.  Volumes and inner products are homogeneous in
// log q, so sums of mixed degree indicate a bookkeeping bug and throw.
// An exact zero is degree-agnostic: 0 absorbs into any degree on addition.
struct GradedScalar {
    Rat value{0};
    int degree{0};

    GradedScalar() = default;
    GradedScalar(Rat v, int d) : value(std::move(v)), degree(d) {}

    static GradedScalar zero() { return GradedScalar(); }

    bool is_zero() const { return value == 0; }

    GradedScalar operator-() const { return {-value, degree}; }

    friend GradedScalar operator+(const GradedScalar& a, const GradedScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.degree != b.degree)
            throw std::domain_error("GradedScalar: adding degrees " +
                                    std::to_string(a.degree) + " and " +
                                    std::to_string(b.degree));
        return {a.value + b.value, a.degree};
    }

    friend GradedScalar operator-(const GradedScalar& a, const GradedScalar& b) {
        return a + (-b);
    }

    friend GradedScalar operator*(const GradedScalar& a, const GradedScalar& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return {a.value * b.value, a.degree + b.degree};
    }

    friend GradedScalar operator*(const Rat& c, const GradedScalar& a) {
        if (c == 0 || a.is_zero()) return zero();
        return {c * a.value, a.degree};
    }

    GradedScalar inverse() const {
        if (is_zero()) throw std::domain_error("GradedScalar: inverse of zero");
        return {Rat(1) / value, -degree};
    }

    friend GradedScalar operator/(const GradedScalar& a, const GradedScalar& b) {
        return a * b.inverse();
    }

    friend bool operator==(const GradedScalar& a, const GradedScalar& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.value == b.value && a.degree == b.degree;
    }
    friend bool operator!=(const GradedScalar& a, const GradedScalar& b) {
        return !(a == b);
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s = rat_str(value);
        if (degree != 0) s += " u^" + std::to_string(degree);
        return s;
    }
};

} // namespace fqtrace
