#pragma once

#include "fqtrace/graded.hpp"
#include "fqtrace/places.hpp"
#include "fqtrace/rational.hpp"

#include <limits>
#include <string>
#include <vector>

namespace fqtrace {

// A unit-invariant function on a local field k_v with compact support in the
// valuation direction: determined by its value on each valuation shell
// v(x) = j.  Stored as
//   jmin   : f vanishes on v(x) < jmin
//   exc    : values on the shells jmin, jmin+1, ..., jmin+exc.size()-1
//   tail   : the common value on v(x) >= jmin+exc.size(), including x = 0
// Canonical form strips leading zero shells and trailing shells equal to the
// tail; the zero function is (jmin = 0, exc = {}, tail = 0).
struct ShellFunction {
    Place place;
    long jmin = 0;
    std::vector<Rat> exc;
    Rat tail{0};

    ShellFunction() = default;
    explicit ShellFunction(Place v) : place(std::move(v)) {}

    static ShellFunction zero(const Place& v);
    // indicator of the ball v(x) >= m (value 1 there, 0 outside)
    static ShellFunction ball(const Place& v, long m);
    // indicator of the single shell v(x) = j
    static ShellFunction shell(const Place& v, long j);

    long jtail() const { return jmin + static_cast<long>(exc.size()); }
    bool is_zero() const { return exc.empty() && tail == 0; }
    Rat at_valuation(long j) const;
    Rat at_zero() const { return tail; }

    void canonicalize();

    friend bool operator==(const ShellFunction& a, const ShellFunction& b);
    friend bool operator!=(const ShellFunction& a, const ShellFunction& b) {
        return !(a == b);
    }

    ShellFunction operator+(const ShellFunction& o) const;
    ShellFunction operator-(const ShellFunction& o) const;
    ShellFunction scaled(const Rat& c) const;

    // f(x) |-> f(1/x); only defined when f(0) = 0 (so the result again has
    // compact support in the valuation direction).
    ShellFunction inverted_argument() const;

    // "place; jmin; [(j,num/den),...]; tail"  (canonical form)
    std::string str() const;
    static ShellFunction parse(const Place& v, const std::string& text);
};

// Additive Haar volume of the ball v(x) >= m in the self-dual normalization:
// q_v^{-m - n/2} where n is the character conductor exponent.  Degree 0 in
// the log-q grading (additive volumes are plain rationals here); the shell
// volume follows as vol(ball m) - vol(ball m+1).
Rat ball_volume(const Place& v, long m);
Rat shell_volume(const Place& v, long j);

// integral of f against additive Haar measure
Rat additive_integral(const ShellFunction& f);

// Fourier transform with respect to the fixed self-dual character; exact,
// and an involution on these unit-invariant functions.
ShellFunction fourier_shell(const ShellFunction& f);

// Multiplicative Haar volume of one shell v(x) = j intersected with k_v^*:
// deg(v) units of log q, independent of j.
GradedScalar shell_mult_volume(const Place& v);

// integral of f against d*x; requires tail = 0, else the sum diverges
GradedScalar mult_integral(const ShellFunction& f);

// Principal value of the unit-normalized pairing against 1/|1-x|: the shell
// at j = 0 is dropped (its divergence is removed by subtracting the value at
// the identity), shells j < 0 weigh q_v^j, shells j > 0 weigh 1.  Requires
// tail = 0.  The result carries one unit of log q.
GradedScalar principal_value(const ShellFunction& f);

} // namespace fqtrace
