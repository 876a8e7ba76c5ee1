#include "fqtrace/shell_function.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fqtrace {

ShellFunction ShellFunction::zero(const Place& v) { return ShellFunction(v); }

ShellFunction ShellFunction::ball(const Place& v, long m) {
    ShellFunction f(v);
    f.jmin = m;
    f.tail = 1;
    return f;
}

ShellFunction ShellFunction::shell(const Place& v, long j) {
    ShellFunction f(v);
    f.jmin = j;
    f.exc = {Rat(1)};
    f.tail = 0;
    return f;
}

Rat ShellFunction::at_valuation(long j) const {
    if (j < jmin) return 0;
    long i = j - jmin;
    if (i < static_cast<long>(exc.size())) return exc[i];
    return tail;
}

void ShellFunction::canonicalize() {
    while (!exc.empty() && exc.back() == tail) exc.pop_back();
    size_t lead = 0;
    while (lead < exc.size() && exc[lead] == 0) ++lead;
    if (lead) {
        exc.erase(exc.begin(), exc.begin() + lead);
        jmin += static_cast<long>(lead);
    }
    if (exc.empty() && tail == 0) jmin = 0;
}

bool operator==(const ShellFunction& a, const ShellFunction& b) {
    ShellFunction ca = a, cb = b;
    ca.canonicalize();
    cb.canonicalize();
    return ca.place == cb.place && ca.jmin == cb.jmin && ca.exc == cb.exc &&
           ca.tail == cb.tail;
}

ShellFunction ShellFunction::operator+(const ShellFunction& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    ShellFunction r(place);
    long lo = std::min(jmin, o.jmin);
    long hi = std::max(jtail(), o.jtail());
    r.jmin = lo;
    r.exc.reserve(hi - lo);
    for (long j = lo; j < hi; ++j) r.exc.push_back(at_valuation(j) + o.at_valuation(j));
    r.tail = tail + o.tail;
    r.canonicalize();
    return r;
}

ShellFunction ShellFunction::operator-(const ShellFunction& o) const {
    return *this + o.scaled(Rat(-1));
}

ShellFunction ShellFunction::scaled(const Rat& c) const {
    if (c == 0) return zero(place);
    ShellFunction r = *this;
    for (Rat& x : r.exc) x *= c;
    r.tail *= c;
    return r;
}

ShellFunction ShellFunction::inverted_argument() const {
    if (tail != 0)
        throw std::domain_error("inverted_argument: nonzero value near zero");
    ShellFunction r(place);
    if (is_zero()) return r;
    r.jmin = -(jtail() - 1);
    r.exc.assign(exc.rbegin(), exc.rend());
    r.tail = 0;
    r.canonicalize();
    return r;
}

std::string ShellFunction::str() const {
    ShellFunction c = *this;
    c.canonicalize();
    std::ostringstream os;
    os << c.place.label() << "; " << c.jmin << "; [";
    for (size_t i = 0; i < c.exc.size(); ++i) {
        if (i) os << ",";
        os << "(" << (c.jmin + static_cast<long>(i)) << "," << rat_str(c.exc[i]) << ")";
    }
    os << "]; " << rat_str(c.tail);
    return os.str();
}

ShellFunction ShellFunction::parse(const Place& v, const std::string& text) {
    auto fail = [&]() -> void {
        throw std::invalid_argument("ShellFunction::parse: bad input '" + text + "'");
    };
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ';') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 4) fail();
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (strip(parts[0]) != v.label()) fail();
    ShellFunction f(v);
    f.jmin = std::stol(strip(parts[1]));
    std::string lst = strip(parts[2]);
    if (lst.size() < 2 || lst.front() != '[' || lst.back() != ']') fail();
    lst = lst.substr(1, lst.size() - 2);
    long expect = f.jmin;
    size_t pos = 0;
    while (pos < lst.size()) {
        size_t open = lst.find('(', pos);
        if (open == std::string::npos) break;
        size_t comma = lst.find(',', open);
        size_t close = lst.find(')', comma);
        if (comma == std::string::npos || close == std::string::npos) fail();
        long j = std::stol(strip(lst.substr(open + 1, comma - open - 1)));
        if (j != expect) fail();
        ++expect;
        f.exc.emplace_back(strip(lst.substr(comma + 1, close - comma - 1)));
        pos = close + 1;
    }
    f.tail = Rat(strip(parts[3]));
    f.canonicalize();
    return f;
}

Rat ball_volume(const Place& v, long m) {
    if (v.n % 2 != 0) throw std::logic_error("ball_volume: odd conductor");
    return v.qv_pow(-m - v.n / 2);
}

Rat shell_volume(const Place& v, long j) {
    return ball_volume(v, j) - ball_volume(v, j + 1);
}

Rat additive_integral(const ShellFunction& f) {
    Rat s = 0;
    for (size_t i = 0; i < f.exc.size(); ++i)
        s += f.exc[i] * shell_volume(f.place, f.jmin + static_cast<long>(i));
    s += f.tail * ball_volume(f.place, f.jtail());
    return s;
}

ShellFunction fourier_shell(const ShellFunction& f) {
    const Place& v = f.place;
    if (v.n % 2 != 0) throw std::logic_error("fourier_shell: odd conductor");
    // Decompose into indicator balls; each ball v(x) >= m maps to
    // q_v^{-m-n/2} times the ball v(x) >= -m-n.  Unit-invariance and the
    // compact-valuation support make this decomposition finite.
    std::map<long, Rat> coef; // ball index -> coefficient of original f
    for (size_t i = 0; i < f.exc.size(); ++i) {
        long j = f.jmin + static_cast<long>(i);
        coef[j] += f.exc[i];
        coef[j + 1] -= f.exc[i];
    }
    coef[f.jtail()] += f.tail;

    std::map<long, Rat> hat; // ball index -> coefficient of the transform
    for (const auto& [m, c] : coef) {
        if (c == 0) continue;
        hat[-m - v.n] += c * v.qv_pow(-m - v.n / 2);
    }
    ShellFunction g(v);
    if (hat.empty()) return g;
    long lo = hat.begin()->first;
    long hi = hat.rbegin()->first;
    g.jmin = lo;
    Rat run = 0;
    for (long m = lo; m <= hi; ++m) {
        auto it = hat.find(m);
        if (it != hat.end()) run += it->second;
        g.exc.push_back(run);
    }
    g.tail = run;
    g.canonicalize();
    return g;
}

GradedScalar shell_mult_volume(const Place& v) {
    return GradedScalar(Rat(v.deg), 1);
}

GradedScalar mult_integral(const ShellFunction& f) {
    if (f.tail != 0)
        throw std::domain_error("mult_integral: divergent (nonzero tail)");
    Rat s = 0;
    for (const Rat& x : f.exc) s += x;
    return Rat(f.place.deg) * GradedScalar(s, 1);
}

GradedScalar principal_value(const ShellFunction& f) {
    if (f.tail != 0)
        throw std::domain_error("principal_value: divergent (nonzero tail)");
    Rat s = 0;
    for (size_t i = 0; i < f.exc.size(); ++i) {
        long j = f.jmin + static_cast<long>(i);
        if (j < 0) s += f.exc[i] * f.place.qv_pow(j);
        else if (j > 0) s += f.exc[i];
    }
    return Rat(f.place.deg) * GradedScalar(s, 1);
}

} // namespace fqtrace
