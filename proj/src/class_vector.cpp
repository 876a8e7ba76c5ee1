#include "fqtrace/class_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqtrace {

ClassVector ClassVector::finite(long lo, std::vector<Rat> values) {
    ClassVector v;
    v.lo = lo;
    v.win = std::move(values);
    v.trim_top();
    return v;
}

Rat ClassVector::at(long d) const {
    if (d > hi()) return 0;
    if (d >= lo) return win[d - lo];
    return tail.at(lo - 1 - d);
}

bool ClassVector::is_zero() const {
    for (const Rat& x : win)
        if (x != 0) return false;
    return tail.is_zero();
}

void ClassVector::extend_down(long new_lo) {
    if (new_lo > lo) throw std::domain_error("ClassVector::extend_down: raising lo");
    long shift = lo - new_lo;
    if (shift == 0) return;
    auto head = tail.first(static_cast<size_t>(shift));
    std::vector<Rat> nw(head.rbegin(), head.rend());
    nw.insert(nw.end(), win.begin(), win.end());
    win = std::move(nw);
    tail = tail.shifted(shift);
    lo = new_lo;
}

void ClassVector::trim_top() {
    while (!win.empty() && win.back() == 0) win.pop_back();
    // an empty window with a live tail needs lo to stay meaningful; keep it
}

ClassVector ClassVector::operator+(const ClassVector& o) const {
    ClassVector a = *this, b = o;
    long nlo = std::min(a.lo, b.lo);
    a.extend_down(nlo);
    b.extend_down(nlo);
    ClassVector r;
    r.lo = nlo;
    r.win.resize(std::max(a.win.size(), b.win.size()), Rat(0));
    for (size_t i = 0; i < r.win.size(); ++i) {
        if (i < a.win.size()) r.win[i] += a.win[i];
        if (i < b.win.size()) r.win[i] += b.win[i];
    }
    r.tail = a.tail + b.tail;
    r.trim_top();
    return r;
}

ClassVector ClassVector::operator-(const ClassVector& o) const {
    return *this + o.scaled(Rat(-1));
}

ClassVector ClassVector::scaled(const Rat& c) const {
    ClassVector r = *this;
    for (Rat& x : r.win) x *= c;
    r.tail = r.tail.scaled(c);
    if (c == 0) r = ClassVector::zero();
    return r;
}

ClassVector ClassVector::arg_shifted(long e) const {
    ClassVector r = *this;
    r.lo -= e;
    return r;
}

bool operator==(const ClassVector& a, const ClassVector& b) {
    return (a - b).is_zero();
}

GradedScalar inner_product(const ClassVector& u, const ClassVector& v, int q) {
    ClassVector a = u, b = v;
    long nlo = std::min(a.lo, b.lo);
    a.extend_down(nlo);
    b.extend_down(nlo);
    Rat s = 0;
    long top = std::max(a.hi(), b.hi());
    for (long d = nlo; d <= top; ++d) s += rat_pow(q, d) * a.at(d) * b.at(d);
    LinRecSeq prod = LinRecSeq::hadamard(a.tail, b.tail);
    Rat tail_sum = prod.ratio_scaled(Rat(1) / Rat(q)).sum_all();
    s += rat_pow(q, nlo - 1) * tail_sum;
    return GradedScalar(s, 1);
}

GradedScalar weighted_sum(const ClassVector& u, int q) {
    Rat s = 0;
    for (long d = u.lo; d <= u.hi(); ++d) s += rat_pow(q, d) * u.at(d);
    Rat tail_sum = u.tail.ratio_scaled(Rat(1) / Rat(q)).sum_all();
    s += rat_pow(q, u.lo - 1) * tail_sum;
    return GradedScalar(s, 1);
}

} // namespace fqtrace
