#include <catch2/catch_amalgamated.hpp>

#include "uml/pdiff.hpp"
#include "uml/shells.hpp"

using namespace uml;

TEST_CASE("kernel weights are monomials in T") {
    PrimePair P{2, 3};
    LaurentT w = pd_kernel_weight(P, 2, Rat(5));
    CHECK(w.evaluate(P.s, Rat(1)) == Rat(5, 9));
    CHECK(w.evaluate(P.s, Rat(3)) == Rat(5));
    LaurentT neg = pd_kernel_weight(P, -1, Rat(1));
    CHECK(neg.evaluate(P.s, Rat(1)) == Rat(3));
}

TEST_CASE("unit-ball indicator evaluates to the closed tail") {
    PrimePair P{2, 3};
    StepFunction ch = StepFunction::indicator(ClopenSet{{Ball::unit(1)}});
    LaurentT full = pd_evaluate(P, ch, Rat(0));
    CHECK(full.evaluate(P.s, Rat(1)) == Rat(-3, 5));
    // deeper evaluation points inside the ball give the same tail
    CHECK(pd_evaluate(P, ch, Rat(4)).evaluate(P.s, Rat(1)) == Rat(-3, 5));
    // partials climb to the closed form with strictly growing order
    Rat v = full.evaluate(P.s, Rat(1));
    long prev = 0;
    for (long d : {5L, 15L, 25L}) {
        Rat gap = v - full.partial_evaluate(Rat(1), d);
        long o = ord_rat(P.s, gap);
        CHECK(o > prev);
        prev = o;
    }
    CHECK(prev >= 20);
}

TEST_CASE("evaluation off the support is a finite expansion") {
    PrimePair P{2, 3};
    StepFunction ch = StepFunction::indicator(ClopenSet{{Ball::unit(1)}});
    // x = 1/2 sits one shell out; f(x) = 0 so there is no far tail at all
    LaurentT out = pd_evaluate(P, ch, Rat(1, 2));
    CHECK(out.tails.empty());
    REQUIRE(out.mono.size() == 1);
    CHECK(out.mono.count(-1) == 1);
    CHECK(out.evaluate(P.s, Rat(1)) == Rat(-3));
    CHECK(out.evaluate(P.s, Rat(3)) == Rat(-1));
    // tail-free data converges for every norm of T
    CHECK(out.converges_for_norm(P.s, Rat(7)));
}

TEST_CASE("restricting the domain to the support kills the operator") {
    PrimePair P{2, 3};
    ClopenSet unit{{Ball::unit(1)}};
    StepFunction ch = StepFunction::indicator(unit);
    for (long t = 0; t < 4; ++t) {
        LaurentT v = pd_evaluate(P, ch, Rat(t), &unit);
        CHECK(v.is_zero());
    }
    // a non-constant function on the domain does produce terms, one per shell
    StepFunction deep = StepFunction::indicator(ClopenSet{{Ball{{Rat(0)}, {2}}}});
    LaurentT v = pd_evaluate(P, deep, Rat(0), &unit);
    CHECK(!v.is_zero());
    CHECK(v.tails.empty());
    // shells at distance orders 0 and 1: 1/2 + (1/12) T
    CHECK(v.evaluate(P.s, Rat(1)) == Rat(7, 12));
    CHECK(v.evaluate(P.s, Rat(3)) == Rat(3, 4));
    CHECK(v.evaluate(P.s, Rat(9)) == Rat(5, 4));
}

TEST_CASE("shift profiles pair measures against sets") {
    PrimePair P{2, 3};
    CellMeasure h = CellMeasure::haar_unit(P, 1);
    ClopenSet unit{{Ball::unit(1)}};
    StepFunction prof = shift_profile(h, Rat(1), unit);
    // lambda -> haar(Z_2 - lambda) is 1 exactly when lambda is integral
    CHECK(prof.value_at(P.p, {Rat(0)}) == 1);
    CHECK(prof.value_at(P.p, {Rat(5)}) == 1);
    CHECK(prof.value_at(P.p, {Rat(1, 2)}) == 0);
    LaurentT ps = pd_measure_shift(h, Rat(1), unit);
    CHECK(ps.evaluate(P.s, Rat(1)) == Rat(3, 5));
    CHECK(ps.converges_for_norm(P.s, Rat(0)));
}

TEST_CASE("witness family shows the quadratic collision order") {
    PrimePair P{2, 3};
    SmallnessReport r = smallness_order(P);
    CHECK(r.q == 2);
    CHECK(r.exact_power);
    CHECK(r.ball_count == 66429);
    REQUIRE(r.samples.size() == 5);
    for (size_t i = 0; i < r.samples.size(); ++i) {
        CHECK(r.samples[i].m == (long)i + 1);
        CHECK(r.samples[i].gap_ord == 2 * ((long)i + 1));
        CHECK(r.samples[i].fitted == Rat(2));
    }
}

TEST_CASE("operator is local plus a controlled far field") {
    PrimePair P{2, 3};
    // far tail of the unit indicator: one record with ratio sp
    StepFunction ch = StepFunction::indicator(ClopenSet{{Ball::unit(1)}});
    LaurentT full = pd_evaluate(P, ch, Rat(0));
    REQUIRE(full.tails.size() == 1);
    CHECK(full.tails[0].u == Rat(6));
    CHECK(full.tails[0].dir == -1);
    CHECK(full.mono.empty());
}
