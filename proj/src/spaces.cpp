#include "fqtrace/spaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqtrace {

namespace {

long weighted_n_sum(const PlaceSet& S) {
    long s = 0;
    for (const Place& v : S.places) s += static_cast<long>(v.deg) * v.n;
    return s;
}

// largest weighted exponent sum the places from index i on can contribute
// when every exponent is confined to [-depth, depth]
std::vector<long> reach_table(const PlaceSet& S, long depth) {
    std::vector<long> reach(S.size() + 1, 0);
    for (size_t i = S.size(); i-- > 0;)
        reach[i] = reach[i + 1] + depth * S.places[i].deg;
    return reach;
}

bool find_rep_rec(const PlaceSet& S, long depth, const std::vector<long>& reach,
                  size_t i, long rem, std::vector<long>& m) {
    if (i == S.size()) return rem == 0;
    long deg = S.places[i].deg;
    for (long mi = -depth; mi <= depth; ++mi) {
        long rem2 = rem - mi * deg;
        if (rem2 < -reach[i + 1] || rem2 > reach[i + 1]) continue;
        m[i] = mi;
        if (find_rep_rec(S, depth, reach, i + 1, rem2, m)) return true;
    }
    return false;
}

// any exponent vector in [-depth,depth]^S whose weighted sum is t
bool find_exponent_rep(const PlaceSet& S, long t, long depth, std::vector<long>& m) {
    m.assign(S.size(), 0);
    std::vector<long> reach = reach_table(S, depth);
    return find_rep_rec(S, depth, reach, 0, t, m);
}

std::vector<long> realized_sums(const PlaceSet& S, long k, long depth) {
    long top = k - weighted_n_sum(S);
    std::vector<long> ts;
    std::vector<long> m;
    for (long t = -k; t <= top; ++t)
        if (find_exponent_rep(S, t, depth, m)) ts.push_back(t);
    return ts;
}

// basis of the null space of a (little) rational matrix with ncols columns,
// one vector per free column, in free-column order
std::vector<std::vector<Rat>> kernel_basis(RatMatrix a, size_t ncols) {
    std::vector<size_t> piv;
    if (!a.empty()) piv = rref(a);
    std::vector<char> is_piv(ncols, 0);
    for (size_t c : piv) is_piv[c] = 1;
    std::vector<std::vector<Rat>> out;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rat> x(ncols, Rat(0));
        x[f] = Rat(1);
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
        out.push_back(std::move(x));
    }
    return out;
}

// Closed form of the monoid-orbit sum of any box tensor with weighted
// exponent sum t: its own support tops out at class -t, its transform is a
// scaled box tensor, and the reflection identity pins every value below
// that: q^{1-t-d} - 1 for d <= -t, zero above.
ClassVector expected_ebar_box(int q, long t) {
    ClassVector v;
    v.lo = -t;
    v.win = {Rat(q - 1)};
    v.tail = LinRecSeq::geometric(Rat(q) * Rat(q), Rat(q)) +
             LinRecSeq::constant(Rat(-1));
    return v;
}

} // namespace

SemiLocalFunction CutSpace::tensor_at(size_t i) const {
    std::vector<ShellFunction> fac;
    fac.reserve(S->size());
    for (size_t p = 0; p < S->size(); ++p)
        fac.push_back(ShellFunction::ball(S->places[p], exps[i][p]));
    return SemiLocalFunction::tensor(*S, std::move(fac));
}

Rat CutSpace::integral_at(size_t i) const {
    Rat vol = 1;
    for (size_t p = 0; p < S->size(); ++p)
        vol *= ball_volume(S->places[p], exps[i][p]);
    return vol;
}

std::vector<std::vector<Rat>> CutSpace::zero_space_coeffs() const {
    RatMatrix a(2, std::vector<Rat>(size()));
    for (size_t i = 0; i < size(); ++i) {
        a[0][i] = Rat(1);
        a[1][i] = integral_at(i);
    }
    return kernel_basis(std::move(a), size());
}

CutSpace build_cut_space(const PlaceSet& S, long k, long depth) {
    if (k < 0) throw std::invalid_argument("build_cut_space: negative height");
    CutSpace C;
    C.S = &S;
    C.k = k;
    C.depth = depth;
    long top = k - weighted_n_sum(S);
    std::vector<long> reach = reach_table(S, depth);
    std::vector<long> m(S.size());
    auto rec = [&](auto&& self, size_t i, long sum) -> void {
        if (sum - reach[i] > top || sum + reach[i] < -k) return;
        if (i == S.size()) {
            C.exps.push_back(m);
            return;
        }
        long deg = S.places[i].deg;
        for (long mi = -depth; mi <= depth; ++mi) {
            m[i] = mi;
            self(self, i + 1, sum + mi * deg);
        }
    };
    rec(rec, 0, 0);
    return C;
}

std::vector<SemiLocalFunction> build_cut_space_by_kernel(const PlaceSet& S, long k,
                                                         long depth) {
    size_t np = S.size();
    // redundant atom family per place: all shells in [-depth, depth) plus
    // the depth ball, each with its bottom valuation and its transform
    std::vector<std::vector<ShellFunction>> atoms(np), hats(np);
    std::vector<std::vector<long>> bottoms(np);
    for (size_t i = 0; i < np; ++i) {
        for (long j = -depth; j < depth; ++j) {
            atoms[i].push_back(ShellFunction::shell(S.places[i], j));
            bottoms[i].push_back(j);
        }
        atoms[i].push_back(ShellFunction::ball(S.places[i], depth));
        bottoms[i].push_back(depth);
        hats[i].reserve(atoms[i].size());
        for (const ShellFunction& a : atoms[i]) hats[i].push_back(fourier_shell(a));
    }

    // distinct atom tuples have disjoint supports, so the support-side cut
    // just drops every tuple whose maximal point norm exceeds q^k
    std::vector<std::vector<size_t>> kept;
    {
        std::vector<long> maxrest(np + 1, 0);
        for (size_t i = np; i-- > 0;)
            maxrest[i] = maxrest[i + 1] + depth * S.places[i].deg;
        std::vector<size_t> idx(np);
        auto rec = [&](auto&& self, size_t i, long sum) -> void {
            if (sum + maxrest[i] < -k) return;
            if (i == np) {
                kept.push_back(idx);
                return;
            }
            for (size_t a = 0; a < atoms[i].size(); ++a) {
                idx[i] = a;
                self(self, i + 1, sum + bottoms[i][a] * S.places[i].deg);
            }
        };
        rec(rec, 0, 0);
    }

    // transform side: the hats are locally constant on a common valuation
    // grid; one vanishing row per grid cell reaching norm above q^k
    std::vector<long> glo(np), ghi(np);
    for (size_t i = 0; i < np; ++i) {
        long lo = hats[i][0].jmin, hi = hats[i][0].jtail();
        for (const ShellFunction& h : hats[i]) {
            lo = std::min(lo, h.jmin);
            hi = std::max(hi, h.jtail());
        }
        glo[i] = lo;
        ghi[i] = hi;
    }
    RatMatrix rows;
    {
        std::vector<long> minrest(np + 1, 0);
        for (size_t i = np; i-- > 0;)
            minrest[i] = minrest[i + 1] + glo[i] * S.places[i].deg;
        std::vector<long> g(np);
        auto rec = [&](auto&& self, size_t i, long sum) -> void {
            if (sum + minrest[i] >= -k) return; // no completion can violate
            if (i == np) {
                std::vector<Rat> row;
                row.reserve(kept.size());
                for (const auto& idx : kept) {
                    Rat p = 1;
                    for (size_t l = 0; l < np && p != 0; ++l)
                        p *= hats[l][idx[l]].at_valuation(g[l]);
                    row.push_back(p);
                }
                rows.push_back(std::move(row));
                return;
            }
            for (long gi = glo[i]; gi <= ghi[i]; ++gi) {
                g[i] = gi;
                self(self, i + 1, sum + gi * S.places[i].deg);
            }
        };
        rec(rec, 0, 0);
    }

    std::vector<std::vector<Rat>> combos = kernel_basis(std::move(rows), kept.size());
    std::vector<SemiLocalFunction> out;
    out.reserve(combos.size());
    for (const auto& x : combos) {
        SemiLocalFunction f(S);
        for (size_t a = 0; a < kept.size(); ++a) {
            if (x[a] == 0) continue;
            std::vector<ShellFunction> fac;
            fac.reserve(np);
            for (size_t i = 0; i < np; ++i) fac.push_back(atoms[i][kept[a][i]]);
            f = f + SemiLocalFunction::tensor(S, std::move(fac), x[a]);
        }
        out.push_back(std::move(f));
    }
    return out;
}

SemiLocalFunction window_function(const PlaceSet& S, long k) {
    SemiLocalFunction f(S);
    Rat c = Rat(1) / Rat(S.q - 1);
    for (long dd = S.k0 - k; dd <= k; ++dd) {
        std::vector<ShellFunction> fac;
        fac.reserve(S.size());
        for (size_t i = 0; i < S.size(); ++i)
            fac.push_back(ShellFunction::shell(S.places[i], -dd * S.u[i]));
        f = f + SemiLocalFunction::tensor(S, std::move(fac), c);
    }
    return f;
}

EngineSpaces build_engine(const PlaceSet& S, long k, long depth0) {
    if (k < 0) throw std::invalid_argument("build_engine: negative height");
    if (depth0 < 0) depth0 = k + std::abs(static_cast<long>(S.places[0].n)) + 1;

    // The orbit-sum image of a box tensor depends only on its weighted
    // exponent sum, so the image saturates in depth exactly when the set of
    // realized sums does.  Require three consecutive depths to agree.
    long D = depth0;
    bool sat = false;
    for (int tries = 0; tries < 6 && !sat; ++tries) {
        size_t n0 = realized_sums(S, k, D).size();
        size_t n1 = realized_sums(S, k, D + 1).size();
        size_t n2 = realized_sums(S, k, D + 2).size();
        if (n0 == n1 && n1 == n2) sat = true;
        else ++D;
    }

    EngineSpaces E;
    E.S = &S;
    E.k = k;
    E.depth = D;
    E.saturated = sat;

    std::vector<long> ts = realized_sums(S, k, D);
    size_t T = ts.size();

    // one representative box tensor per realized sum; its certified orbit
    // sum must match the reflection closed form exactly
    std::vector<ClassVector> ebars;
    ebars.reserve(T);
    std::vector<long> m;
    for (long t : ts) {
        if (!find_exponent_rep(S, t, D, m))
            throw std::logic_error("build_engine: lost an exponent representative");
        std::vector<ShellFunction> fac;
        fac.reserve(S.size());
        for (size_t i = 0; i < S.size(); ++i)
            fac.push_back(ShellFunction::ball(S.places[i], m[i]));
        ClassVector eb = periodize_ebar(SemiLocalFunction::tensor(S, std::move(fac)));
        if (eb != expected_ebar_box(S.q, t))
            throw std::logic_error("build_engine: orbit sum defies the reflection form");
        ebars.push_back(std::move(eb));
    }

    // the 0-subspace imposes two rows on the grouped coefficients: total
    // mass and total integral; combining the orbit sums along its null
    // space cancels both tail modes, leaving finite windows
    RatMatrix bmat(2, std::vector<Rat>(T));
    for (size_t i = 0; i < T; ++i) {
        bmat[0][i] = Rat(1);
        bmat[1][i] = rat_pow(S.q, 1 - ts[i]);
    }
    std::vector<ClassVector> w0;
    for (const auto& gamma : kernel_basis(std::move(bmat), T)) {
        ClassVector acc = ClassVector::zero();
        for (size_t i = 0; i < T; ++i)
            if (gamma[i] != 0) acc = acc + ebars[i].scaled(gamma[i]);
        if (!acc.tail_is_zero())
            throw std::logic_error("build_engine: 0-space image kept a tail");
        w0.push_back(std::move(acc));
    }
    E.qbar0 = build_subspace(S.q, w0);

    std::vector<ClassVector> e0;
    e0.reserve(w0.size());
    for (const ClassVector& w : w0) e0.push_back(conv_moebius(S, w));
    E.q0 = build_subspace(S.q, e0);
    if (E.q0.rank() != E.qbar0.rank())
        throw std::logic_error("build_engine: Moebius transform dropped rank");

    // the distinguished window directions
    SemiLocalFunction f1 = window_function(S, k);
    E.ew_f1 = periodize_e(f1);
    {
        ClassVector expect = ClassVector::zero();
        long wlo = S.k0 - k;
        if (wlo <= k)
            expect = ClassVector::finite(
                wlo, std::vector<Rat>(static_cast<size_t>(k - wlo) + 1, Rat(1)));
        if (E.ew_f1 != expect)
            throw std::logic_error("build_engine: window orbit sum is not the indicator");
    }
    // the transformed window is not finitely supported: its orbit sums pick
    // up the value at the origin on every deep class, giving a certified
    // polynomially growing tail (still summable against the q^d weight)
    E.ew_f0 = f1.is_zero() ? ClassVector::zero() : periodize_e(f1.fourier());

    std::vector<ClassVector> full = e0;
    full.push_back(E.ew_f1);
    full.push_back(E.ew_f0);
    E.qfull = build_subspace(S.q, full);

    E.dim_qbar0 = static_cast<long>(E.qbar0.rank());
    E.dim_q0 = static_cast<long>(E.q0.rank());
    E.dim_qfull = static_cast<long>(E.qfull.rank());
    E.window_residual2 = E.q0.empty() ? inner_product(E.ew_f1, E.ew_f1, S.q).value
                                      : residual_norm2(E.q0, E.ew_f1);
    return E;
}

} // namespace fqtrace
