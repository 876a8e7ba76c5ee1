#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fqtrace/linrec.hpp"

using namespace fqtrace;

namespace {
LinRecSeq fib() {
    LinRecSeq u;
    u.rec = {Rat(1), Rat(1)};
    u.init = {Rat(0), Rat(1)};
    return u;
}
} // namespace

TEST_CASE("schur-cohn unit-disk test on pinned cases") {
    // little-endian coefficients
    CHECK(roots_strictly_inside_unit({Rat(-1, 2), Rat(1)}));                    // z-1/2
    CHECK(!roots_strictly_inside_unit({Rat(-1), Rat(1)}));                      // z-1
    CHECK(!roots_strictly_inside_unit({Rat(1), Rat(1)}));                       // z+1
    CHECK(!roots_strictly_inside_unit({Rat(-2), Rat(1)}));                      // z-2
    CHECK(roots_strictly_inside_unit({Rat(1, 6), Rat(-5, 6), Rat(1)}));         // (z-1/2)(z-1/3)
    CHECK(!roots_strictly_inside_unit({Rat(1, 2), Rat(-3, 2), Rat(1)}));        // (z-1)(z-1/2)
    CHECK(!roots_strictly_inside_unit({Rat(1), Rat(0), Rat(1)}));               // z^2+1
    CHECK(roots_strictly_inside_unit({Rat(1, 2), Rat(-1), Rat(1)}));            // |roots|=sqrt(2)/2
    CHECK(roots_strictly_inside_unit({Rat(7)}));                                // constant
    CHECK(roots_strictly_inside_unit({Rat(0), Rat(1)}));                        // z (root at 0)
}

TEST_CASE("evaluation and shifting") {
    LinRecSeq f = fib();
    CHECK(f.at(10) == Rat(55));
    CHECK(f.at(20) == Rat(6765));
    LinRecSeq g = f.shifted(3);
    for (long s = 0; s <= 15; ++s) CHECK(g.at(s) == f.at(s + 3));
}

TEST_CASE("canonical forms identify equal sequences") {
    // same sequence, three representations
    LinRecSeq a = LinRecSeq::geometric(Rat(3), Rat(1, 2));
    LinRecSeq b;
    b.rec = {Rat(1), Rat(-1, 4), Rat(0)}; // redundant order-3 recurrence
    b.init = {Rat(3), Rat(3, 2), Rat(3, 4), Rat(3, 8)};
    LinRecSeq c = LinRecSeq::from_gf({Rat(3)}, {Rat(1), Rat(-1, 2)});
    CHECK(a == b);
    CHECK(b == c);
    CHECK(a.canonical_gf() == c.canonical_gf());
    CHECK(!(a == fib()));

    // an exceptional head survives canonicalization
    LinRecSeq d;
    d.rec = {Rat(1, 2)};
    d.init = {Rat(99), Rat(1), Rat(1, 2)};
    CHECK(d.at(0) == Rat(99));
    d.reduce();
    CHECK(d.at(0) == Rat(99));
    CHECK(d.at(4) == Rat(1, 8));
}

TEST_CASE("algebra: sums, scalings, hadamard products") {
    LinRecSeq f = fib();
    LinRecSeq g = LinRecSeq::geometric(Rat(1), Rat(2));
    LinRecSeq s = f + g;
    for (long i = 0; i <= 12; ++i) CHECK(s.at(i) == f.at(i) + g.at(i));

    LinRecSeq h = LinRecSeq::hadamard(f, f);
    for (long i = 0; i <= 12; ++i) CHECK(h.at(i) == f.at(i) * f.at(i));

    LinRecSeq r = f.ratio_scaled(Rat(1, 3));
    for (long i = 0; i <= 8; ++i) CHECK(r.at(i) == f.at(i) * rat_pow(Rat(1, 3), i));

    LinRecSeq z = f - f;
    CHECK(z.is_zero());
    CHECK((f + LinRecSeq::zero()) == f);

    // head-heavy operands
    LinRecSeq d;
    d.rec = {Rat(1, 2)};
    d.init = {Rat(99), Rat(-7), Rat(1)};
    LinRecSeq hd = LinRecSeq::hadamard(d, g);
    for (long i = 0; i <= 10; ++i) CHECK(hd.at(i) == d.at(i) * g.at(i));
}

TEST_CASE("exact series summation with divergence detection") {
    // geometric
    CHECK(LinRecSeq::geometric(Rat(1), Rat(1, 2)).sum_all() == Rat(2));
    CHECK(LinRecSeq::geometric(Rat(5), Rat(-2, 3)).sum_all() == Rat(3));
    // sum fib(s) x^s = x/(1-x-x^2): frozen values at x = 1/3 and 1/2
    CHECK(fib().ratio_scaled(Rat(1, 3)).sum_all() == Rat(3, 5));
    CHECK(fib().ratio_scaled(Rat(1, 2)).sum_all() == Rat(2));
    // divergent: dominant root moves onto/outside the unit circle
    CHECK_THROWS_AS(fib().sum_all(), std::domain_error);
    CHECK_THROWS_AS(fib().ratio_scaled(Rat(2, 3)).sum_all(), std::domain_error);
    CHECK_THROWS_AS(LinRecSeq::geometric(Rat(1), Rat(1)).sum_all(), std::domain_error);
    CHECK_THROWS_AS(LinRecSeq::geometric(Rat(1), Rat(-1)).sum_all(), std::domain_error);
    // finitely supported series always sum
    LinRecSeq fin;
    fin.init = {Rat(4), Rat(-1), Rat(1, 3)};
    CHECK(fin.sum_all() == Rat(10, 3));
    CHECK(LinRecSeq::zero().sum_all() == Rat(0));
}

TEST_CASE("fitting against a known annihilator verifies surplus samples") {
    // u(s) = 2^s + 3, annihilated by (z-2)(z-1) = z^2-3z+2
    std::vector<Rat> chi = {Rat(2), Rat(-3), Rat(1)};
    std::vector<Rat> good = {Rat(4), Rat(5), Rat(7), Rat(11), Rat(19), Rat(35)};
    LinRecSeq u = fit_with_annihilator(chi, good);
    CHECK(u.at(10) == Rat(1024 + 3));
    std::vector<Rat> bad = good;
    bad.back() += 1;
    CHECK_THROWS_AS(fit_with_annihilator(chi, bad), std::logic_error);
}

TEST_CASE("generating function round trip") {
    auto [num, den] = fib().canonical_gf();
    CHECK(num == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(den == std::vector<Rat>{Rat(1), Rat(-1), Rat(-1)});
    LinRecSeq back = LinRecSeq::from_gf(num, den);
    CHECK(back == fib());
}
