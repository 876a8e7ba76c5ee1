#include "fqtrace/places.hpp"

#include <stdexcept>

namespace fqtrace {

Rat Place::qv_pow(long e) const { return rat_pow(qv_long(), e); }

Place infinite_place(int q) {
    Place v;
    v.q = q;
    v.infinite = true;
    v.deg = 1;
    v.n = -2;
    return v;
}

Place finite_place(FqPoly prime) {
    if (!prime.is_monic() || !prime.is_irreducible())
        throw std::invalid_argument("finite_place: need a monic irreducible");
    Place v;
    v.q = prime.F->q;
    v.infinite = false;
    v.deg = prime.degree();
    v.n = 0;
    v.prime = std::move(prime);
    return v;
}

std::vector<Place> enumerate_places(int q, int max_deg) {
    std::vector<Place> out;
    out.push_back(infinite_place(q));
    const FqContext& F = FqContext::get(q);
    for (int d = 1; d <= max_deg; ++d)
        for (FqPoly& f : FqPoly::enumerate_monic(F, d))
            if (f.is_irreducible()) out.push_back(finite_place(std::move(f)));
    return out;
}

long count_irreducibles(int q, int d) {
    long n = 0;
    const FqContext& F = FqContext::get(q);
    for (const FqPoly& f : FqPoly::enumerate_monic(F, d))
        if (f.is_irreducible()) ++n;
    return n;
}

namespace {

// parse one monomial like "t^3", "2*t", "t", "5"
void parse_monomial(const FqContext& F, const std::string& term,
                    std::vector<int>& coeffs) {
    size_t pos = 0;
    int coef = 1;
    bool have_coef = false;
    if (pos < term.size() && isdigit(term[pos])) {
        coef = 0;
        while (pos < term.size() && isdigit(term[pos]))
            coef = coef * 10 + (term[pos++] - '0');
        have_coef = true;
        if (pos < term.size() && term[pos] == '*') ++pos;
    }
    int expo = 0;
    if (pos < term.size() && term[pos] == 't') {
        ++pos;
        expo = 1;
        if (pos < term.size() && term[pos] == '^') {
            ++pos;
            expo = 0;
            while (pos < term.size() && isdigit(term[pos]))
                expo = expo * 10 + (term[pos++] - '0');
        }
    } else if (!have_coef) {
        throw std::invalid_argument("parse_place: bad term '" + term + "'");
    }
    if (pos != term.size())
        throw std::invalid_argument("parse_place: bad term '" + term + "'");
    if (coef < 0 || coef >= F.q)
        throw std::invalid_argument("parse_place: coefficient out of range");
    if (static_cast<int>(coeffs.size()) <= expo) coeffs.resize(expo + 1, 0);
    coeffs[expo] = F.add(coeffs[expo], coef);
}

} // namespace

Place parse_place(int q, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "inf" || s == "infty" || s == "oo") return infinite_place(q);
    const FqContext& F = FqContext::get(q);
    std::vector<int> coeffs;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == '+') {
            if (i == start) throw std::invalid_argument("parse_place: empty term");
            parse_monomial(F, s.substr(start, i - start), coeffs);
            start = i + 1;
        }
    }
    return finite_place(FqPoly(F, std::move(coeffs)));
}

} // namespace fqtrace
