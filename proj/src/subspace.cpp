// Exact rational linear algebra on spans of class vectors: Gram matrices,
// rank-revealing pivot selection, orthogonal projection, projected traces.

#include "fqtrace/subspace.hpp"

#include <stdexcept>

namespace fqtrace {

RatMatrix mat_inverse(RatMatrix a) {
    const size_t n = a.size();
    RatMatrix inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("mat_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<size_t> rref(RatMatrix& a) {
    std::vector<size_t> pivot_cols;
    if (a.empty()) return pivot_cols;
    const size_t cols = a[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < a.size(); ++col) {
        size_t piv = row;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        Rat d = a[row][col];
        for (size_t j = col; j < cols; ++j) a[row][j] /= d;
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (size_t j = col; j < cols; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    a.resize(pivot_cols.size());
    return pivot_cols;
}

SubspaceBasis build_subspace(int q, std::vector<ClassVector> gens) {
    SubspaceBasis B;
    B.q = q;
    B.gens = std::move(gens);
    const size_t n = B.gens.size();
    B.gram.assign(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat v = inner_product(B.gens[i], B.gens[j], q).value;
            B.gram[i][j] = v;
            B.gram[j][i] = v;
        }

    // greedy rank-revealing subset: take each generator, in order, whose
    // Schur-complement diagonal against the already selected block is
    // nonzero; keep the inverse of the selected block updated by the
    // bordered-inverse formula
    for (size_t j = 0; j < n; ++j) {
        const size_t r = B.pivots.size();
        std::vector<Rat> g(r);
        for (size_t i = 0; i < r; ++i) g[i] = B.gram[B.pivots[i]][j];
        std::vector<Rat> w(r, Rat(0)); // w = G_pp^{-1} g
        for (size_t i = 0; i < r; ++i)
            for (size_t l = 0; l < r; ++l) w[i] += B.gram_inv[i][l] * g[l];
        Rat d = B.gram[j][j];
        for (size_t i = 0; i < r; ++i) d -= g[i] * w[i];
        if (d == 0) continue; // dependent on the selected block
        RatMatrix ni(r + 1, std::vector<Rat>(r + 1, Rat(0)));
        for (size_t i = 0; i < r; ++i)
            for (size_t l = 0; l < r; ++l)
                ni[i][l] = B.gram_inv[i][l] + w[i] * w[l] / d;
        for (size_t i = 0; i < r; ++i) {
            ni[i][r] = -w[i] / d;
            ni[r][i] = -w[i] / d;
        }
        ni[r][r] = Rat(1) / d;
        B.gram_inv = std::move(ni);
        B.pivots.push_back(j);
    }
    return B;
}

std::vector<Rat> solve_on_pivots(const SubspaceBasis& B, const std::vector<Rat>& rhs) {
    const size_t r = B.rank();
    if (rhs.size() != r) throw std::invalid_argument("solve_on_pivots: size mismatch");
    std::vector<Rat> x(r, Rat(0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) x[i] += B.gram_inv[i][j] * rhs[j];
    return x;
}

namespace {

std::vector<Rat> pairings_with_pivots(const SubspaceBasis& B, const ClassVector& v) {
    std::vector<Rat> rhs(B.rank());
    for (size_t i = 0; i < B.rank(); ++i)
        rhs[i] = inner_product(B.gens[B.pivots[i]], v, B.q).value;
    return rhs;
}

} // namespace

ClassVector project(const SubspaceBasis& B, const ClassVector& v) {
    if (B.empty()) return ClassVector::zero();
    std::vector<Rat> x = solve_on_pivots(B, pairings_with_pivots(B, v));
    ClassVector p = ClassVector::zero();
    for (size_t i = 0; i < B.rank(); ++i)
        p = p + B.gens[B.pivots[i]].scaled(x[i]);
    return p;
}

Rat residual_norm2(const SubspaceBasis& B, const ClassVector& v) {
    Rat vv = inner_product(v, v, B.q).value;
    if (B.empty()) return vv;
    std::vector<Rat> rhs = pairings_with_pivots(B, v);
    std::vector<Rat> x = solve_on_pivots(B, rhs);
    // ||v - Pv||^2 = <v,v> - x.rhs  (since G x = rhs)
    for (size_t i = 0; i < B.rank(); ++i) vv -= x[i] * rhs[i];
    return vv;
}

bool in_span(const SubspaceBasis& B, const ClassVector& v) {
    return residual_norm2(B, v) == 0;
}

Rat projected_trace_raw(const SubspaceBasis& B,
                        const std::vector<ClassVector>& pivot_images) {
    const size_t r = B.rank();
    if (pivot_images.size() != r)
        throw std::invalid_argument("projected_trace_raw: image count mismatch");
    // tr(P A) = tr(G_pp^{-1} M) with M_ij = <b_i, A b_j> on the pivot block
    Rat tr = 0;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            tr += B.gram_inv[i][j] *
                  inner_product(B.gens[B.pivots[j]], pivot_images[i], B.q).value;
    return tr;
}

} // namespace fqtrace
