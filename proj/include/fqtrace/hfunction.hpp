#pragma once

#include "fqtrace/graded.hpp"
#include "fqtrace/rational.hpp"

#include <map>

namespace fqtrace {

// A finitely supported test function on the class line; h[e] weighs the
// translation by e classes in the averaged regular representation.
struct HFunction {
    std::map<long, Rat> coef;

    Rat at(long e) const {
        auto it = coef.find(e);
        return it == coef.end() ? Rat(0) : it->second;
    }
    void set(long e, const Rat& v) {
        if (v == 0) coef.erase(e);
        else coef[e] = v;
    }
    bool is_zero() const { return coef.empty(); }
    long min_class() const { return coef.empty() ? 0 : coef.begin()->first; }
    long max_class() const { return coef.empty() ? 0 : coef.rbegin()->first; }

    // adjoint symbol: e |-> q^e h(-e).  In the q^d-weighted pairing the shift
    // by e has adjoint q^{-e} times the shift by -e, so U(dual(h)) = U(h)*;
    // dualizing also swaps the two boundary weights hat0 and hat1.
    HFunction dual(int q) const {
        HFunction d;
        for (const auto& [e, v] : coef) d.set(-e, rat_pow(q, -e) * v);
        return d;
    }

    // boundary weights: hat_h(0) = sum_e h(e), hat_h(1) = sum_e h(e) q^{-e},
    // each carrying one unit of log q
    GradedScalar hat0(int /*q*/) const {
        Rat s = 0;
        for (const auto& [e, v] : coef) s += v;
        return GradedScalar(s, 1);
    }
    GradedScalar hat1(int q) const {
        Rat s = 0;
        for (const auto& [e, v] : coef) s += v * rat_pow(q, -e);
        return GradedScalar(s, 1);
    }
};

} // namespace fqtrace
