#include "fqtrace/traces.hpp"

#include <stdexcept>

namespace fqtrace {

ClassVector apply_h(const HFunction& h, const ClassVector& v) {
    ClassVector r = ClassVector::zero();
    for (const auto& [e, c] : h.coef) r = r + v.arg_shifted(e).scaled(c);
    return r;
}

GradedScalar trace_of(const SubspaceBasis& B, const HFunction& h) {
    if (B.empty() || h.is_zero()) return GradedScalar::zero();
    std::vector<ClassVector> images;
    images.reserve(B.pivots.size());
    for (size_t p : B.pivots) images.push_back(apply_h(h, B.gens[p]));
    return GradedScalar(projected_trace_raw(B, images), 1);
}

EngineTraces traces_for(const EngineSpaces& E, const HFunction& h) {
    EngineTraces T;
    T.tr_q0 = trace_of(E.q0, h);
    T.tr_qbar0 = trace_of(E.qbar0, h);
    T.tr_qfull = trace_of(E.qfull, h);
    std::vector<ClassVector> conj;
    conj.reserve(E.q0.gens.size());
    for (const ClassVector& g : E.q0.gens) conj.push_back(conv_counting(*E.S, g));
    T.tr_qbar0_conj = trace_of(build_subspace(E.S->q, conj), h);
    return T;
}

Rat window_eigenvalue(const PlaceSet& S, long k, long e) {
    if (e > 0) throw std::domain_error("window_eigenvalue: shift must be <= 0");
    long top = 2 * k - S.k0; // window classes sit at offsets 0..top
    if (top < 0) throw std::domain_error("window_eigenvalue: degenerate height");
    long v = -e;
    // ratio of the shift-truncated window mass to the full window mass; the
    // numerator empties entirely once the translate misses the window, which
    // the naive geometric closed form would get wrong
    Rat den = 0, num = 0;
    for (long j = 0; j <= top; ++j) den += rat_pow(S.q, j);
    for (long j = 0; j + v <= top; ++j) num += rat_pow(S.q, j);
    return Rat(S.q - 1) * rat_pow(S.q, v) * num / den;
}

bool window_eigen_congruence(const EngineSpaces& E, long e) {
    if (E.ew_f1.is_zero()) return true; // empty window: nothing to compress
    HFunction h;
    h.set(e, Rat(E.S->q - 1));
    ClassVector moved = project(E.qfull, apply_h(h, E.ew_f1));
    ClassVector z = moved - E.ew_f1.scaled(window_eigenvalue(*E.S, E.k, e));
    if (E.q0.empty()) return z.is_zero();
    return in_span(E.q0, z);
}

} // namespace fqtrace
