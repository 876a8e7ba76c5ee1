#include "fqtrace/place_set.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fqtrace {

namespace {

// coefficients of 1/den(x) up to length len; den(0) = 1
std::vector<Rat> series_inverse(const std::vector<Rat>& den, size_t len) {
    std::vector<Rat> inv(len, Rat(0));
    if (len == 0) return inv;
    inv[0] = 1;
    for (size_t s = 1; s < len; ++s) {
        Rat v = 0;
        for (size_t i = 1; i < den.size() && i <= s; ++i) v -= den[i] * inv[s - i];
        inv[s] = v;
    }
    return inv;
}

std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b,
                            size_t len) {
    std::vector<Rat> r(len, Rat(0));
    for (size_t i = 0; i < a.size() && i < len; ++i)
        for (size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
    return r;
}

} // namespace

std::vector<Rat> PlaceSet::finite_prod_poly() const {
    std::vector<Rat> p = {Rat(1)};
    for (size_t i = 1; i < places.size(); ++i) {
        std::vector<Rat> factor(places[i].deg + 1, Rat(0));
        factor[0] = 1;
        factor[places[i].deg] = -1;
        std::vector<Rat> np(p.size() + factor.size() - 1, Rat(0));
        for (size_t a = 0; a < p.size(); ++a)
            for (size_t b = 0; b < factor.size(); ++b) np[a + b] += p[a] * factor[b];
        p = std::move(np);
    }
    return p;
}

std::vector<Rat> PlaceSet::counting_seq(size_t len) const {
    // N = finite_prod / (1 - q x)
    std::vector<Rat> geom = series_inverse({Rat(1), Rat(-q)}, len);
    return series_mul(finite_prod_poly(), geom, len);
}

std::vector<Rat> PlaceSet::moebius_seq(size_t len) const {
    // M = (1 - q x) / finite_prod
    std::vector<Rat> inv = series_inverse(finite_prod_poly(), len);
    return series_mul({Rat(1), Rat(-q)}, inv, len);
}

PlaceSet make_place_set(int q, std::vector<Place> places) {
    if (places.size() < 2)
        throw std::invalid_argument("place set: need at least two places");
    // canonical order: infinity first, then finite places by degree and by
    // the coefficient code of the prime; the set, not the input order,
    // determines the object
    auto code = [](const Place& v) {
        long c = 0;
        for (int i = v.prime.degree(); i >= 0; --i) c = c * v.q + v.prime.coeff(i);
        return c;
    };
    std::sort(places.begin(), places.end(), [&](const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return a.infinite;
        if (a.infinite) return false;
        if (a.deg != b.deg) return a.deg < b.deg;
        return code(a) < code(b);
    });
    if (!places[0].infinite)
        throw std::invalid_argument("place set: must contain the infinite place");
    for (size_t i = 1; i < places.size(); ++i) {
        if (places[i].infinite)
            throw std::invalid_argument("place set: duplicate infinite place");
        if (places[i].q != q)
            throw std::invalid_argument("place set: mixed base fields");
        for (size_t j = 1; j < i; ++j)
            if (places[i] == places[j])
                throw std::invalid_argument("place set: duplicate place");
    }
    int g = 0;
    for (const Place& v : places) g = std::gcd(g, v.deg);
    if (g != 1)
        throw std::invalid_argument("place set: residue degrees must be coprime");

    PlaceSet S;
    S.q = q;
    S.places = std::move(places);

    int k0 = 0;
    for (const Place& v : S.places) k0 += v.deg * (1 + v.n);
    if (k0 < 0) throw std::invalid_argument("place set: negative conductor shift");
    S.k0 = k0;

    // valuation vector of the norm-q^{-1} idele: prefer a single degree-one
    // finite place; otherwise solve  sum deg_v u_v = 1  greedily via the
    // extended gcd over the places in order
    S.u.assign(S.places.size(), 0);
    long pick = -1;
    for (size_t i = 1; i < S.places.size(); ++i)
        if (S.places[i].deg == 1) {
            pick = static_cast<long>(i);
            break;
        }
    if (pick >= 0) {
        S.u[pick] = 1;
    } else {
        long g2 = 0;
        std::vector<long> coef(S.places.size(), 0);
        for (size_t i = 0; i < S.places.size(); ++i) {
            long d = S.places[i].deg;
            if (g2 == 0) {
                g2 = d;
                coef[i] = 1;
                continue;
            }
            // extended gcd step: g2' = gcd(g2, d) = x*g2 + y*d
            long old_r = g2, r = d, old_x = 1, x = 0;
            while (r != 0) {
                long quo = old_r / r;
                long tr = old_r - quo * r;
                old_r = r;
                r = tr;
                long tx = old_x - quo * x;
                old_x = x;
                x = tx;
            }
            long y = (old_r - old_x * g2) / d;
            for (long& c : coef) c *= old_x;
            coef[i] = y;
            g2 = old_r;
        }
        S.u = coef;
    }
    long check = 0;
    for (size_t i = 0; i < S.places.size(); ++i) check += S.places[i].deg * S.u[i];
    if (check != 1) throw std::logic_error("place set: bad norm idele");
    return S;
}

PlaceSet parse_place_set(int q, const std::vector<std::string>& labels) {
    std::vector<Place> ps;
    ps.reserve(labels.size());
    for (const std::string& s : labels) ps.push_back(parse_place(q, s));
    return make_place_set(q, std::move(ps));
}

} // namespace fqtrace
