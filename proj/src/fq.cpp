#include "fqtrace/fq.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace fqtrace {

namespace {

// Fixed moduli for the non-prime fields so element encodings are stable.
std::vector<int> modulus_for(int p, int m) {
    if (m == 1) return {0, 1}; // the variable itself; unused for arithmetic
    if (p == 2 && m == 2) return {1, 1, 1};       // x^2+x+1
    if (p == 2 && m == 3) return {1, 1, 0, 1};    // x^3+x+1
    if (p == 2 && m == 4) return {1, 1, 0, 0, 1}; // x^4+x+1
    if (p == 3 && m == 2) return {1, 0, 1};       // x^2+1
    throw std::invalid_argument("FqContext: unsupported field");
}

int decompose_prime_power(int q, int& p, int& m) {
    for (int cand : {2, 3, 5, 7, 11, 13}) {
        if (q % cand == 0) {
            p = cand;
            m = 0;
            int v = q;
            while (v > 1) {
                if (v % cand != 0)
                    throw std::invalid_argument("FqContext: q is not a prime power");
                v /= cand;
                ++m;
            }
            return p;
        }
    }
    throw std::invalid_argument("FqContext: q out of range");
}

// digits of e in base p, little-endian, length m
std::vector<int> digits(int e, int p, int m) {
    std::vector<int> d(m);
    for (int i = 0; i < m; ++i) {
        d[i] = e % p;
        e /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int e = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) e = e * p + d[i];
    return e;
}

FqContext build_context(int q) {
    FqContext F;
    F.q = q;
    decompose_prime_power(q, F.p, F.m);
    F.modulus = modulus_for(F.p, F.m);

    const int p = F.p, m = F.m;
    F.add_tab.assign(q * q, 0);
    F.mul_tab.assign(q * q, 0);
    F.inv_tab.assign(q, -1);

    auto poly_mul_mod = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> prod(2 * m - 1, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        // reduce by the monic modulus
        for (int d = 2 * m - 2; d >= m; --d) {
            int c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < m; ++i)
                prod[d - m + i] = ((prod[d - m + i] - c * F.modulus[i]) % p + p) % p;
        }
        prod.resize(m);
        return prod;
    };

    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p, m);
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p, m);
            std::vector<int> s(m);
            for (int i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % p;
            F.add_tab[a * q + b] = undigits(s, p);
            F.mul_tab[a * q + b] = undigits(poly_mul_mod(da, db), p);
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (F.mul_tab[a * q + b] == 1) F.inv_tab[a] = b;
    return F;
}

} // namespace

int FqContext::neg(int a) const {
    for (int b = 0; b < q; ++b)
        if (add_tab[a * q + b] == 0) return b;
    throw std::logic_error("FqContext::neg");
}

int FqContext::inv(int a) const {
    if (a == 0) throw std::domain_error("FqContext: inverse of zero");
    return inv_tab[a];
}

int FqContext::pow(int a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = 1, b = a;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

int FqContext::trace_to_prime(int a) const {
    // Tr(a) = a + a^p + ... + a^{p^(m-1)}, an element of the prime field,
    // i.e. an encoding with only the constant digit set.
    int s = 0, x = a;
    for (int i = 0; i < m; ++i) {
        s = add(s, x);
        x = pow(x, p);
    }
    if (s >= p) throw std::logic_error("trace_to_prime: not in prime field");
    return s;
}

const FqContext& FqContext::get(int q) {
    static std::map<int, FqContext> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, build_context(q)).first;
    return it->second;
}

FqPoly::FqPoly(const FqContext& ctx, std::vector<int> coeffs)
    : F(&ctx), c(std::move(coeffs)) {
    trim();
}

void FqPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

FqPoly FqPoly::constant(const FqContext& ctx, int a) {
    FqPoly r(ctx);
    if (a != 0) r.c = {a};
    return r;
}

FqPoly FqPoly::x(const FqContext& ctx) { return FqPoly(ctx, {0, 1}); }

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    FqPoly r(*a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F->add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    FqPoly r(*a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F->sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    FqPoly r(*a.F);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.F->add(r.c[i + j], a.F->mul(a.c[i], b.c[j]));
    r.trim();
    return r;
}

std::pair<FqPoly, FqPoly> FqPoly::divmod(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) throw std::domain_error("FqPoly: division by zero");
    const FqContext& F = *a.F;
    FqPoly q(F), r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.degree() - b.degree() + 1, 0);
    int binv = F.inv(b.lead());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        int coef = F.mul(r.lead(), binv);
        q.c[d] = coef;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[d + i] = F.sub(r.c[d + i], F.mul(coef, b.c[i]));
        r.trim();
    }
    q.trim();
    return {q, r};
}

FqPoly FqPoly::pow_mod(long e, const FqPoly& modp) const {
    FqPoly r = constant(*F, 1), b = this->mod(modp);
    while (e) {
        if (e & 1) r = (r * b).mod(modp);
        b = (b * b).mod(modp);
        e >>= 1;
    }
    return r;
}

bool FqPoly::divides(const FqPoly& a) const { return a.mod(*this).is_zero(); }

bool FqPoly::is_irreducible() const {
    int d = degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int e = 1; 2 * e <= d; ++e)
        for (const FqPoly& g : enumerate_monic(*F, e))
            if (g.is_irreducible() && g.divides(*this)) return false;
    return true;
}

std::vector<FqPoly> FqPoly::enumerate_monic(const FqContext& ctx, int d) {
    std::vector<FqPoly> out;
    long total = 1;
    for (int i = 0; i < d; ++i) total *= ctx.q;
    out.reserve(total);
    for (long code = 0; code < total; ++code) {
        std::vector<int> coeffs(d + 1, 0);
        long v = code;
        for (int i = 0; i < d; ++i) {
            coeffs[i] = static_cast<int>(v % ctx.q);
            v /= ctx.q;
        }
        coeffs[d] = 1;
        out.emplace_back(ctx, std::move(coeffs));
    }
    return out;
}

std::string FqPoly::str(char var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) {
            if (c[i] != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace fqtrace
