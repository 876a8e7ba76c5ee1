#pragma once

#include "fqtrace/place_set.hpp"
#include "fqtrace/shell_function.hpp"

#include <vector>

namespace fqtrace {

// A finite linear combination of pure tensors of unit-invariant local
// functions over the places of a PlaceSet.  Factor i of every term lives at
// S.places[i].  The function it represents on the restricted product is
// determined by the vector of local valuations (unit-invariance).
struct TensorTerm {
    Rat coef{1};
    std::vector<ShellFunction> factors;
};

struct SemiLocalFunction {
    const PlaceSet* S = nullptr;
    std::vector<TensorTerm> terms;

    SemiLocalFunction() = default;
    explicit SemiLocalFunction(const PlaceSet& s) : S(&s) {}

    static SemiLocalFunction zero(const PlaceSet& s) { return SemiLocalFunction(s); }
    // single tensor of indicator shells/balls given by one local factor per place
    static SemiLocalFunction tensor(const PlaceSet& s, std::vector<ShellFunction> f,
                                    const Rat& coef = Rat(1));

    bool is_zero() const { return terms.empty(); }

    // value on the open set with valuation vector b (one entry per place)
    Rat value_at(const std::vector<long>& b) const;
    // value at the zero adele (every coordinate deep in its tail)
    Rat value_at_zero() const;

    Rat integral() const; // against the product additive measure

    SemiLocalFunction operator+(const SemiLocalFunction& o) const;
    SemiLocalFunction scaled(const Rat& c) const;
    SemiLocalFunction fourier() const; // term-by-term, factor-by-factor

    // largest class d = log_q |x| attained on the support; meaningful only
    // for nonzero functions (support is never empty for a nonzero term)
    long support_top_class() const;
};

} // namespace fqtrace
