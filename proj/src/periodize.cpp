#include "fqtrace/periodize.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqtrace {

namespace {

// Sum of one tensor term over the orbit of norm class d.  The group part is
// F_q^* (a factor q-1, the local factors are unit-invariant) times integer
// exponent vectors n at the finite places of S; the monoid part appends a
// monic polynomial coprime to S of degree a >= 0, entering only through its
// degree, weighted by the number N_a of such polynomials.  The valuation
// seen by factor i is n_i - d u_i, and at infinity -(sum n_i deg_i + a) - d u_inf.
Rat term_orbit_sum(const PlaceSet& S, const TensorTerm& t, long d,
                   const std::vector<Rat>* monoid_counts) {
    size_t nf = S.size() - 1; // finite places
    const ShellFunction& finf = t.factors[0];
    // cap on sum n_i deg_i + a from the bottom of the infinite factor
    long cap = -finf.jmin - d * S.u[0];
    std::vector<long> lo(nf), deg(nf);
    long minsum = 0;
    for (size_t i = 0; i < nf; ++i) {
        const Place& v = S.places[i + 1];
        deg[i] = v.deg;
        lo[i] = t.factors[i + 1].jmin + d * S.u[i + 1];
        minsum += lo[i] * deg[i];
    }
    if (minsum > cap) return 0;
    // suffix minima for pruning
    std::vector<long> suffix(nf + 1, 0);
    for (size_t i = nf; i-- > 0;) suffix[i] = suffix[i + 1] + lo[i] * deg[i];

    Rat total = 0;
    std::vector<long> n(nf);
    auto rec = [&](auto&& self, size_t i, long used, const Rat& prod) -> void {
        if (prod == 0) return;
        if (i == nf) {
            long room = cap - used;
            if (monoid_counts) {
                for (long a = 0; a <= room; ++a) {
                    const Rat& cnt = (*monoid_counts)[a];
                    if (cnt == 0) continue;
                    total += prod * cnt *
                             finf.at_valuation(-used - a - d * S.u[0]);
                }
            } else {
                total += prod * finf.at_valuation(-used - d * S.u[0]);
            }
            return;
        }
        for (long ni = lo[i]; used + ni * deg[i] + suffix[i + 1] <= cap; ++ni) {
            n[i] = ni;
            self(self, i + 1, used + ni * deg[i],
                 prod * t.factors[i + 1].at_valuation(ni - d * S.u[i + 1]));
        }
    };
    rec(rec, 0, 0, t.coef);
    return Rat(S.q - 1) * total;
}

Rat orbit_sum(const SemiLocalFunction& f, long d, bool with_monoid) {
    const PlaceSet& S = *f.S;
    std::vector<Rat> counts;
    const std::vector<Rat>* cptr = nullptr;
    if (with_monoid) {
        long maxroom = 0;
        for (const TensorTerm& t : f.terms) {
            long cap = -t.factors[0].jmin - d * S.u[0];
            long minsum = 0;
            for (size_t i = 1; i < S.size(); ++i)
                minsum += (t.factors[i].jmin + d * S.u[i]) * S.places[i].deg;
            maxroom = std::max(maxroom, cap - minsum);
        }
        counts = S.counting_seq(static_cast<size_t>(std::max(maxroom, 0L)) + 1);
        cptr = &counts;
    }
    Rat s = 0;
    for (const TensorTerm& t : f.terms) s += term_orbit_sum(S, t, d, cptr);
    return s;
}

// reversed little-endian coefficients: the annihilator of the Moebius
// sequence as a polynomial in the shift operator
std::vector<Rat> moebius_annihilator(const PlaceSet& S) {
    std::vector<Rat> p = S.finite_prod_poly();
    return std::vector<Rat>(p.rbegin(), p.rend());
}

} // namespace

Rat e_value(const SemiLocalFunction& f, long d) { return orbit_sum(f, d, false); }

Rat ebar_value(const SemiLocalFunction& f, long d) { return orbit_sum(f, d, true); }

ClassVector periodize_ebar(const SemiLocalFunction& f) {
    if (f.is_zero()) return ClassVector::zero();
    const PlaceSet& S = *f.S;
    long hi = f.support_top_class();
    SemiLocalFunction fhat = f.fourier();
    long lo_tail = -fhat.support_top_class();
    Rat f0 = f.value_at_zero();
    Rat fhat0 = f.integral();

    long lo = std::min(lo_tail, hi + 1) - 2;
    ClassVector v;
    v.lo = lo;
    v.win.reserve(hi - lo + 1);
    for (long d = lo; d <= hi; ++d) v.win.push_back(ebar_value(f, d));
    v.tail = LinRecSeq::geometric(fhat0 * rat_pow(S.q, 1 - lo), Rat(S.q)) +
             LinRecSeq::constant(-f0);
    for (long s = 0; s <= 3; ++s)
        if (v.tail.at(s) != ebar_value(f, lo - 1 - s))
            throw std::logic_error("periodize_ebar: reflection tail mismatch");
    v.trim_top();
    return v;
}

ClassVector periodize_e(const SemiLocalFunction& f) {
    if (f.is_zero()) return ClassVector::zero();
    const PlaceSet& S = *f.S;
    long hi = f.support_top_class();
    SemiLocalFunction fhat = f.fourier();
    long lo_tail = -fhat.support_top_class();

    // annihilator chi_M(z) (z-1) (z-q) of the below-window tail
    std::vector<Rat> chi = poly_mul(moebius_annihilator(S),
                                    poly_mul({Rat(-1), Rat(1)}, {Rat(-S.q), Rat(1)}));
    size_t order = chi.size() - 1;

    long lo = std::min(lo_tail, hi + 1);
    ClassVector v;
    v.lo = lo;
    v.win.reserve(std::max(hi - lo + 1, 0L));
    for (long d = lo; d <= hi; ++d) v.win.push_back(e_value(f, d));
    std::vector<Rat> samples;
    samples.reserve(order + 4);
    for (size_t s = 0; s < order + 4; ++s)
        samples.push_back(e_value(f, lo - 1 - static_cast<long>(s)));
    v.tail = fit_with_annihilator(chi, samples);
    v.trim_top();
    return v;
}

ClassVector conv_moebius(const PlaceSet& S, const ClassVector& v) {
    if (!v.tail_is_zero())
        throw std::domain_error("conv_moebius: input must have finite support");
    if (v.is_zero()) return ClassVector::zero();
    long lo = v.lo, hi = v.hi();
    std::vector<Rat> M = S.moebius_seq(static_cast<size_t>(hi - lo + 1));
    ClassVector r;
    r.lo = lo;
    r.win.assign(hi - lo + 1, Rat(0));
    for (long d = lo; d <= hi; ++d) {
        Rat s = 0;
        for (long e = d; e <= hi; ++e) s += M[e - d] * v.at(e);
        r.win[d - lo] = s;
    }
    std::vector<Rat> chi = moebius_annihilator(S);
    size_t order = chi.size() - 1;
    std::vector<Rat> Mdeep =
        S.moebius_seq(static_cast<size_t>(hi - lo + 1 + order + 4));
    std::vector<Rat> samples;
    for (size_t s = 0; s < order + 4; ++s) {
        long d = lo - 1 - static_cast<long>(s);
        Rat acc = 0;
        for (long e = lo; e <= hi; ++e) acc += Mdeep[e - d] * v.at(e);
        samples.push_back(acc);
    }
    r.tail = fit_with_annihilator(chi, samples);
    r.trim_top();
    return r;
}

Rat conv_counting_value(const PlaceSet& S, const ClassVector& v, long d) {
    long hi = v.hi();
    if (d > hi) return 0;
    std::vector<Rat> N = S.counting_seq(static_cast<size_t>(hi - d) + 1);
    Rat s = 0;
    for (long a = 0; a <= hi - d; ++a) s += N[a] * v.at(d + a);
    return s;
}

ClassVector conv_counting(const PlaceSet& S, const ClassVector& v) {
    if (v.is_zero()) return ClassVector::zero();
    // Below the input window the transform is a Cauchy product of the
    // counting sequence (pure q-geometric past the degree of the finite
    // product polynomial) with the input tail, plus a window part that is
    // itself purely q-geometric at that depth; so the tail is annihilated
    // by chi_{v-tail}(z) (z-1) (z-q) once sampling starts below both
    // transient heads.
    auto [tnum, tden] = v.tail.canonical_gf();
    std::vector<Rat> chi_tail(tden.rbegin(), tden.rend());
    std::vector<Rat> chi = poly_mul(chi_tail,
                                    poly_mul({Rat(-1), Rat(1)}, {Rat(-S.q), Rat(1)}));
    size_t order = chi.size() - 1;
    long head_n = static_cast<long>(S.finite_prod_poly().size()) - 1;
    long head_t = std::max<long>(
        0, static_cast<long>(tnum.size()) - static_cast<long>(tden.size()) + 1);
    long s0 = head_n + head_t + 2;

    long hi = v.hi();
    long lo_ext = v.lo - s0;
    ClassVector r;
    r.lo = lo_ext;
    r.win.reserve(hi - lo_ext + 1);
    for (long d = lo_ext; d <= hi; ++d) r.win.push_back(conv_counting_value(S, v, d));
    std::vector<Rat> samples;
    samples.reserve(order + 4);
    for (size_t s = 0; s < order + 4; ++s)
        samples.push_back(conv_counting_value(S, v, lo_ext - 1 - static_cast<long>(s)));
    r.tail = fit_with_annihilator(chi, samples);
    r.trim_top();
    return r;
}

} // namespace fqtrace
