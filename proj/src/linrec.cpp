#include "fqtrace/linrec.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqtrace {

namespace {

void poly_trim(std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

} // namespace

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

std::vector<Rat> poly_add(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

Rat poly_eval(const std::vector<Rat>& p, const Rat& x) {
    Rat r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a,
                                                          const std::vector<Rat>& b) {
    std::vector<Rat> bb = b;
    poly_trim(bb);
    if (bb.empty()) throw std::domain_error("poly_divmod: division by zero");
    poly_trim(a);
    if (a.size() < bb.size()) return {{}, std::move(a)};
    std::vector<Rat> q(a.size() - bb.size() + 1, Rat(0));
    Rat lead = bb.back();
    for (size_t shift = q.size(); shift-- > 0;) {
        size_t d = shift + bb.size() - 1;
        if (a[d] == 0) continue;
        Rat c = a[d] / lead;
        q[shift] = c;
        for (size_t i = 0; i < bb.size(); ++i) a[shift + i] -= c * bb[i];
    }
    poly_trim(a);
    return {std::move(q), std::move(a)};
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (Rat& c : a) c /= lead;
    }
    return a;
}

bool roots_strictly_inside_unit(std::vector<Rat> p) {
    poly_trim(p);
    if (p.empty())
        throw std::domain_error("roots_strictly_inside_unit: zero polynomial");
    while (p.size() > 1) {
        size_t n = p.size() - 1;
        const Rat& a0 = p[0];
        const Rat& an = p[n];
        if (rat_abs(a0) >= rat_abs(an)) return false;
        // one Schur-Cohn step: (an*p - a0*rev(p)) / z, degree drops by one
        std::vector<Rat> next(n);
        for (size_t i = 1; i <= n; ++i) next[i - 1] = an * p[i] - a0 * p[n - i];
        poly_trim(next);
        if (next.empty())
            throw std::logic_error("roots_strictly_inside_unit: degenerate step");
        p = std::move(next);
    }
    return true;
}

LinRecSeq LinRecSeq::zero() { return LinRecSeq{}; }

LinRecSeq LinRecSeq::constant(const Rat& c) {
    if (c == 0) return zero();
    return LinRecSeq{{Rat(1)}, {c}};
}

LinRecSeq LinRecSeq::geometric(const Rat& scale, const Rat& ratio) {
    if (scale == 0) return zero();
    return LinRecSeq{{ratio}, {scale}};
}

LinRecSeq LinRecSeq::from_gf(std::vector<Rat> num, std::vector<Rat> den) {
    poly_trim(num);
    poly_trim(den);
    if (den.empty() || den[0] == 0)
        throw std::domain_error("LinRecSeq::from_gf: denominator must be a unit at 0");
    Rat d0 = den[0];
    for (Rat& c : den) c /= d0;
    for (Rat& c : num) c /= d0;
    LinRecSeq u;
    u.rec.resize(den.size() - 1);
    for (size_t i = 1; i < den.size(); ++i) u.rec[i - 1] = -den[i];
    size_t L = std::max({num.size(), den.size() - 1, size_t(0)});
    u.init.resize(L, Rat(0));
    for (size_t s = 0; s < L; ++s) {
        Rat v = s < num.size() ? num[s] : Rat(0);
        for (size_t i = 1; i <= std::min(s, den.size() - 1); ++i)
            v -= den[i] * u.init[s - i];
        u.init[s] = v;
    }
    return u;
}

bool LinRecSeq::is_zero() const {
    auto gf = canonical_gf();
    return gf.first.empty();
}

Rat LinRecSeq::at(long s) const {
    if (s < 0) throw std::domain_error("LinRecSeq::at: negative index");
    if (s < static_cast<long>(init.size())) return init[s];
    return first(static_cast<size_t>(s) + 1).back();
}

std::vector<Rat> LinRecSeq::first(size_t n) const {
    std::vector<Rat> out(init.begin(),
                         init.begin() + std::min(n, init.size()));
    while (out.size() < n) {
        Rat v = 0;
        size_t s = out.size();
        for (size_t i = 0; i < rec.size(); ++i) {
            if (s < i + 1) break;
            v += rec[i] * out[s - 1 - i];
        }
        out.push_back(v);
    }
    return out;
}

std::pair<std::vector<Rat>, std::vector<Rat>> LinRecSeq::canonical_gf() const {
    std::vector<Rat> den(rec.size() + 1);
    den[0] = 1;
    for (size_t i = 0; i < rec.size(); ++i) den[i + 1] = -rec[i];
    std::vector<Rat> num(init.size(), Rat(0));
    for (size_t s = 0; s < init.size(); ++s) {
        Rat v = 0;
        for (size_t i = 0; i <= std::min(s, den.size() - 1); ++i)
            v += den[i] * init[s - i];
        num[s] = v;
    }
    poly_trim(num);
    if (num.empty()) return {{}, {Rat(1)}};
    auto g = poly_gcd(num, den);
    if (g.size() > 1) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    Rat d0 = den[0];
    for (Rat& c : den) c /= d0;
    for (Rat& c : num) c /= d0;
    return {std::move(num), std::move(den)};
}

void LinRecSeq::reduce() {
    auto gf = canonical_gf();
    *this = from_gf(std::move(gf.first), std::move(gf.second));
}

LinRecSeq LinRecSeq::shifted(long s0) const {
    if (s0 < 0) throw std::domain_error("LinRecSeq::shifted: negative shift");
    size_t keep = init.size() > static_cast<size_t>(s0)
                      ? init.size() - static_cast<size_t>(s0)
                      : size_t(0);
    size_t len = std::max(keep, rec.size());
    auto vals = first(static_cast<size_t>(s0) + len);
    LinRecSeq u;
    u.rec = rec;
    u.init.assign(vals.begin() + s0, vals.end());
    u.reduce();
    return u;
}

LinRecSeq LinRecSeq::ratio_scaled(const Rat& rho) const {
    LinRecSeq u;
    u.rec.resize(rec.size());
    Rat pw = 1;
    for (size_t i = 0; i < rec.size(); ++i) {
        pw *= rho;
        u.rec[i] = rec[i] * pw;
    }
    u.init.resize(init.size());
    pw = 1;
    for (size_t s = 0; s < init.size(); ++s) {
        u.init[s] = init[s] * pw;
        pw *= rho;
    }
    u.reduce();
    return u;
}

LinRecSeq LinRecSeq::scaled(const Rat& c) const {
    if (c == 0) return zero();
    LinRecSeq u = *this;
    for (Rat& v : u.init) v *= c;
    return u;
}

LinRecSeq operator+(const LinRecSeq& a, const LinRecSeq& b) {
    auto ga = a.canonical_gf();
    auto gb = b.canonical_gf();
    std::vector<Rat> num = poly_add(poly_mul(ga.first, gb.second),
                                    poly_mul(gb.first, ga.second));
    std::vector<Rat> den = poly_mul(ga.second, gb.second);
    LinRecSeq u = LinRecSeq::from_gf(std::move(num), std::move(den));
    u.reduce();
    return u;
}

LinRecSeq operator-(const LinRecSeq& a, const LinRecSeq& b) {
    return a + b.scaled(Rat(-1));
}

namespace {

// power sums p_1..p_needed of the roots of a monic polynomial, from its
// coefficients via Newton's identities
std::vector<Rat> power_sums(const std::vector<Rat>& chi, size_t needed) {
    size_t n = chi.size() - 1; // degree; chi little-endian, chi[n] = 1
    // big-endian a_k = coeff of z^{n-k}
    auto a = [&](size_t k) -> Rat { return chi[n - k]; };
    std::vector<Rat> p(needed + 1, Rat(0));
    for (size_t k = 1; k <= needed; ++k) {
        Rat v = 0;
        if (k <= n) v = -Rat(static_cast<long>(k)) * a(k);
        for (size_t i = 1; i < k && i <= n; ++i) v -= a(i) * p[k - i];
        p[k] = v;
    }
    return p;
}

// monic polynomial (little-endian) of degree n with prescribed root power
// sums p_1..p_n, via the inverse Newton identities
std::vector<Rat> poly_from_power_sums(const std::vector<Rat>& p, size_t n) {
    std::vector<Rat> a(n + 1, Rat(0)); // big-endian a_0..a_n, a_0 = 1
    a[0] = 1;
    for (size_t k = 1; k <= n; ++k) {
        Rat v = p[k];
        for (size_t i = 1; i < k; ++i) v += a[i] * p[k - i];
        a[k] = -v / Rat(static_cast<long>(k));
    }
    std::vector<Rat> chi(n + 1);
    for (size_t k = 0; k <= n; ++k) chi[n - k] = a[k];
    return chi;
}

} // namespace

LinRecSeq LinRecSeq::hadamard(const LinRecSeq& a, const LinRecSeq& b) {
    if (a.rec.empty() || b.rec.empty()) {
        const LinRecSeq& fin = a.rec.empty() ? a : b;
        const LinRecSeq& oth = a.rec.empty() ? b : a;
        LinRecSeq u;
        u.init.resize(fin.init.size());
        auto vals = oth.first(fin.init.size());
        for (size_t s = 0; s < fin.init.size(); ++s) u.init[s] = fin.init[s] * vals[s];
        u.reduce();
        return u;
    }
    size_t ra = a.rec.size(), rb = b.rec.size();
    size_t n = ra * rb;
    std::vector<Rat> chia(ra + 1), chib(rb + 1);
    chia[ra] = 1;
    for (size_t i = 0; i < ra; ++i) chia[ra - 1 - i] = -a.rec[i];
    chib[rb] = 1;
    for (size_t i = 0; i < rb; ++i) chib[rb - 1 - i] = -b.rec[i];
    auto pa = power_sums(chia, n);
    auto pb = power_sums(chib, n);
    std::vector<Rat> pc(n + 1);
    for (size_t k = 1; k <= n; ++k) pc[k] = pa[k] * pb[k];
    auto chic = poly_from_power_sums(pc, n);

    size_t sa0 = a.init.size() - ra, sb0 = b.init.size() - rb;
    size_t s0 = std::max(sa0, sb0);
    size_t L = s0 + n;
    auto va = a.first(L);
    auto vb = b.first(L);
    LinRecSeq u;
    u.rec.resize(n);
    for (size_t i = 0; i < n; ++i) u.rec[i] = -chic[n - 1 - i];
    u.init.resize(L);
    for (size_t s = 0; s < L; ++s) u.init[s] = va[s] * vb[s];
    u.reduce();
    return u;
}

bool operator==(const LinRecSeq& a, const LinRecSeq& b) {
    return a.canonical_gf() == b.canonical_gf();
}

Rat LinRecSeq::sum_all() const {
    auto [num, den] = canonical_gf();
    if (num.empty()) return 0;
    if (den.size() > 1) {
        std::vector<Rat> rev(den.rbegin(), den.rend());
        if (!roots_strictly_inside_unit(rev))
            throw std::domain_error("LinRecSeq::sum_all: divergent series");
    }
    return poly_eval(num, Rat(1)) / poly_eval(den, Rat(1));
}

LinRecSeq fit_with_annihilator(const std::vector<Rat>& chi_in,
                               const std::vector<Rat>& samples) {
    std::vector<Rat> chi = chi_in;
    poly_trim(chi);
    if (chi.size() < 1) throw std::domain_error("fit_with_annihilator: zero poly");
    Rat lead = chi.back();
    for (Rat& c : chi) c /= lead;
    size_t n = chi.size() - 1;
    if (samples.size() < n + 1)
        throw std::domain_error("fit_with_annihilator: not enough samples");
    LinRecSeq u;
    u.rec.resize(n);
    for (size_t i = 0; i < n; ++i) u.rec[i] = -chi[n - 1 - i];
    u.init.assign(samples.begin(), samples.begin() + n);
    auto vals = u.first(samples.size());
    for (size_t s = n; s < samples.size(); ++s)
        if (vals[s] != samples[s])
            throw std::logic_error("fit_with_annihilator: samples violate annihilator");
    u.reduce();
    return u;
}

} // namespace fqtrace
