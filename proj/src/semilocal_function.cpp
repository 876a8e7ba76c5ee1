#include "fqtrace/semilocal_function.hpp"

#include <stdexcept>

namespace fqtrace {

SemiLocalFunction SemiLocalFunction::tensor(const PlaceSet& s,
                                            std::vector<ShellFunction> f,
                                            const Rat& coef) {
    if (f.size() != s.size())
        throw std::invalid_argument("SemiLocalFunction: one factor per place");
    SemiLocalFunction g(s);
    bool dead = (coef == 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (!(f[i].place == s.places[i]))
            throw std::invalid_argument("SemiLocalFunction: factor at wrong place");
        if (f[i].is_zero()) dead = true;
    }
    if (!dead) g.terms.push_back(TensorTerm{coef, std::move(f)});
    return g;
}

Rat SemiLocalFunction::value_at(const std::vector<long>& b) const {
    if (b.size() != S->size())
        throw std::invalid_argument("SemiLocalFunction: bad valuation vector");
    Rat s = 0;
    for (const TensorTerm& t : terms) {
        Rat prod = t.coef;
        for (size_t i = 0; i < b.size() && prod != 0; ++i)
            prod *= t.factors[i].at_valuation(b[i]);
        s += prod;
    }
    return s;
}

Rat SemiLocalFunction::value_at_zero() const {
    Rat s = 0;
    for (const TensorTerm& t : terms) {
        Rat prod = t.coef;
        for (const ShellFunction& f : t.factors) prod *= f.tail;
        s += prod;
    }
    return s;
}

Rat SemiLocalFunction::integral() const {
    Rat s = 0;
    for (const TensorTerm& t : terms) {
        Rat prod = t.coef;
        for (const ShellFunction& f : t.factors) prod *= additive_integral(f);
        s += prod;
    }
    return s;
}

SemiLocalFunction SemiLocalFunction::operator+(const SemiLocalFunction& o) const {
    if (S != o.S)
        throw std::invalid_argument("SemiLocalFunction: mixed place sets");
    SemiLocalFunction r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
}

SemiLocalFunction SemiLocalFunction::scaled(const Rat& c) const {
    if (c == 0) return zero(*S);
    SemiLocalFunction r = *this;
    for (TensorTerm& t : r.terms) t.coef *= c;
    return r;
}

SemiLocalFunction SemiLocalFunction::fourier() const {
    SemiLocalFunction r(*S);
    r.terms.reserve(terms.size());
    for (const TensorTerm& t : terms) {
        TensorTerm ht;
        ht.coef = t.coef;
        ht.factors.reserve(t.factors.size());
        bool dead = false;
        for (const ShellFunction& f : t.factors) {
            ht.factors.push_back(fourier_shell(f));
            if (ht.factors.back().is_zero()) dead = true;
        }
        if (!dead) r.terms.push_back(std::move(ht));
    }
    return r;
}

long SemiLocalFunction::support_top_class() const {
    if (terms.empty())
        throw std::domain_error("support_top_class: zero function");
    bool first = true;
    long best = 0;
    for (const TensorTerm& t : terms) {
        long c = 0;
        for (size_t i = 0; i < t.factors.size(); ++i)
            c -= S->places[i].deg * t.factors[i].jmin;
        if (first || c > best) best = c;
        first = false;
    }
    return best;
}

} // namespace fqtrace
