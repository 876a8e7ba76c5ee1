#pragma once

#include <string>
#include <vector>

namespace fqtrace {

// Arithmetic context for a small finite field F_q, q = p^m <= 16.
// Elements are encoded as integers in [0, q): the base-p digits of the code
// are the coefficients of the element written in the power basis of a fixed
// monic irreducible modulus over F_p.  Tables are built once and cached.
struct FqContext {
    int p = 0;
    int m = 0;
    int q = 0;
    std::vector<int> modulus; // little-endian coefficients over F_p, size m+1

    std::vector<int> mul_tab; // q*q
    std::vector<int> add_tab; // q*q
    std::vector<int> inv_tab; // q (inv_tab[0] = -1)

    int add(int a, int b) const { return add_tab[a * q + b]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int mul(int a, int b) const { return mul_tab[a * q + b]; }
    int neg(int a) const;
    int inv(int a) const;
    int pow(int a, long e) const;

    // Trace down to the prime field, valued in [0, p).  Composing with a
    // nontrivial additive character of F_p gives the standard additive
    // character of F_q; for exact work we only ever need the trace tag.
    int trace_to_prime(int a) const;

    // Cached context; q must be in {2,3,4,5,7,8,9,11,13,16}.
    static const FqContext& get(int q);
};

// Dense polynomial over F_q, little-endian coefficients, no trailing zeros.
// The zero polynomial has an empty coefficient vector and degree -1.
struct FqPoly {
    const FqContext* F = nullptr;
    std::vector<int> c;

    FqPoly() = default;
    explicit FqPoly(const FqContext& ctx) : F(&ctx) {}
    FqPoly(const FqContext& ctx, std::vector<int> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    int coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0;
    }
    int lead() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return lead() == 1; }
    void trim();

    static FqPoly zero(const FqContext& ctx) { return FqPoly(ctx); }
    static FqPoly constant(const FqContext& ctx, int a);
    static FqPoly x(const FqContext& ctx); // the variable t

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
    friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c == b.c; }
    friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

    // (quotient, remainder) with deg r < deg b; b must be nonzero.
    static std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b);
    FqPoly mod(const FqPoly& b) const { return divmod(*this, b).second; }
    FqPoly pow_mod(long e, const FqPoly& modp) const;

    bool divides(const FqPoly& a) const; // *this | a

    // Trial division; fine for the small degrees this project uses.
    bool is_irreducible() const;

    // Monic polynomials of exact degree d, in a fixed deterministic order:
    // the lower coefficients (c_0, ..., c_{d-1}) run through base-q counting
    // of 0 .. q^d - 1 with c_0 the least significant digit.
    static std::vector<FqPoly> enumerate_monic(const FqContext& ctx, int d);

    // Human-readable form in the variable `var`, e.g. "t^2+t+1".
    std::string str(char var = 't') const;
};

} // namespace fqtrace
