#include "fqtrace/rhs.hpp"

namespace fqtrace {

GradedScalar window_log_volume(long k) {
    long classes = 0;
    for (long d = -k; d <= k; ++d) ++classes; // one unit per class in the window
    return GradedScalar(Rat(classes), 1);
}

ShellFunction pullback_to_place(const HFunction& h, const Place& v) {
    ShellFunction f(v);
    if (h.is_zero()) return f;
    long deg = v.deg;
    auto fdiv = [](long a, long b) {
        long q = a / b;
        if (a % b != 0 && (a % b < 0) != (b < 0)) --q;
        return q;
    };
    // shells j with -deg*j inside the support of h
    long jlo = -fdiv(h.max_class(), deg);
    long jhi = fdiv(-h.min_class(), deg);
    if (jhi < jlo) return f;
    f.jmin = jlo;
    f.exc.reserve(static_cast<size_t>(jhi - jlo) + 1);
    for (long j = jlo; j <= jhi; ++j) f.exc.push_back(h.at(-deg * j));
    f.canonicalize();
    return f;
}

GradedScalar place_pv_term(const HFunction& h, const Place& v) {
    return principal_value(pullback_to_place(h, v));
}

ExplicitSide explicit_side(const PlaceSet& S, long k, const HFunction& h) {
    ExplicitSide r;
    r.main = (Rat(2) * h.at(0)) * window_log_volume(k);
    r.hat0 = h.hat0(S.q);
    r.hat1 = h.hat1(S.q);
    r.pv_sum = GradedScalar::zero();
    for (const Place& v : S.places) r.pv_sum = r.pv_sum + place_pv_term(h, v);
    r.total = r.main - r.hat0 - r.hat1 + r.pv_sum;
    return r;
}

bool pv_vanishes_at(const HFunction& h, const Place& w) {
    ShellFunction f = pullback_to_place(h, w);
    // supported on the unit shell only, hence killed by the principal value
    bool unit_multiple = f.is_zero() || (f.jmin == 0 && f.exc.size() == 1);
    return unit_multiple && principal_value(f).is_zero();
}

} // namespace fqtrace
