#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uml/cyclo.hpp"
#include "uml/fourier.hpp"
#include "uml/serialize.hpp"

using namespace uml;

TEST_CASE("cyclotomic arithmetic at small levels") {
    // level-2 root over p = 2 is i: check i^2 = -1
    CycloValue i2 = CycloValue::root_power(2, 2, 1);
    CHECK(i2.times(i2).equals(CycloValue::constant(2, 0, Rat(-1))));
    // 1 + z + z^2 = 0 for the cube root
    CycloValue z = CycloValue::root_power(3, 1, 1);
    CycloValue acc = CycloValue::constant(3, 0, Rat(1)).plus(z).plus(z.times(z));
    CHECK(acc.is_zero());
    // mixed-level embedding: the level-1 root of unity inside level 2 (p=2)
    CycloValue m1 = CycloValue::root_power(2, 1, 1);  // -1
    CHECK(m1.is_rational());
    CHECK(m1.rational_part() == -1);
    CHECK(i2.times(i2).equals(m1));
    // rotation is multiplication by a root power
    CHECK(i2.rotated(2).equals(i2.times(i2).times(i2)));
}

TEST_CASE("compression finds the smallest field") {
    CycloValue i2 = CycloValue::root_power(2, 2, 1);
    CycloValue sq = i2.times(i2);  // -1 lives at level 0
    CycloValue c = sq.compressed();
    CHECK(c.k == 0);
    CHECK(c.rational_part() == -1);
    CHECK(CycloValue::root_power(2, 3, 2).compressed().k == 2);
}

TEST_CASE("characters pair points against the dual") {
    PrimePair P{2, 3};
    // integral xi * x lands in Z_p: trivial character value
    CHECK(character_value(P, {Rat(3)}, {Rat(5)}).rational_part() == 1);
    // xi * x = 1/2: the order-two character
    CycloValue v = character_value(P, {Rat(1, 2)}, {Rat(1)});
    CHECK(v.is_rational());
    CHECK(v.rational_part() == -1);
    // bilinear in the exponent: chi(xi, x + y) = chi(xi, x) chi(xi, y)
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        Rat xi(1 + (long)(rng() % 15), 8);
        Rat x(1 + (long)(rng() % 9), 4), y((long)(rng() % 9) - 4, 2);
        CycloValue lhs = character_value(P, {xi}, {x + y});
        CycloValue rhs = character_value(P, {xi}, {x}).times(character_value(P, {xi}, {y}));
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("characteristic values of haar") {
    PrimePair P{2, 3};
    CellMeasure h = CellMeasure::haar_unit(P, 1);
    CHECK(theta(h, {Rat(0)}).rational_part() == 1);
    CHECK(theta(h, {Rat(3)}).rational_part() == 1);   // dual point in Z_p
    CHECK(theta(h, {Rat(1, 2)}).is_zero());           // any deeper point kills haar
    CHECK(theta(h, {Rat(3, 8)}).is_zero());
}

TEST_CASE("frozen two-cell table") {
    PrimePair P{2, 3};
    CellMeasure mu = CellMeasure::make(
        P, {{Ball{{Rat(0)}, {1}}, Rat(4, 3)}, {Ball{{Rat(1)}, {1}}, Rat(2, 3)}});
    ThetaTable t = theta_table(mu, 2);
    REQUIRE(t.values.size() == 4);
    // grid order 0, 1/4, 1/2, 3/4: cells at level 1 only see the top of the dual
    CHECK(t.values[0].rational_part() == 1);
    CHECK(t.values[1].is_zero());
    CHECK(t.values[2].rational_part() == Rat(1, 3));
    CHECK(t.values[3].is_zero());
    CellMeasure back = invert_theta(P, t);
    CHECK(back.same_measure(mu));
}

TEST_CASE("inversion is exact on random measures") {
    PrimePair P{2, 3};
    std::mt19937_64 rng(29);
    for (int i = 0; i < 12; ++i) {
        size_t d = 1 + i % 2;
        long L = 1 + i % 2;
        std::vector<std::pair<Ball, Rat>> cells;
        long side = (long)ipow(P.p, L);
        long total = d == 1 ? side : side * side;
        for (long code = 0; code < total; ++code) {
            if (rng() % 2) continue;
            std::vector<Rat> ctr(d);
            long c = code;
            for (size_t k = 0; k < d; ++k) {
                ctr[k] = Rat(c % side);
                c /= side;
            }
            cells.push_back({Ball{ctr, std::vector<long>(d, L)},
                             Rat((long)(rng() % 19) - 9, 1 + (long)(rng() % 5))});
        }
        if (cells.empty()) continue;
        CellMeasure mu = CellMeasure::make(P, cells);
        CHECK(invert_theta(P, theta_table(mu, 2)).same_measure(mu));
    }
}

TEST_CASE("transform rules on dual grids") {
    PrimePair P{2, 3};
    CellMeasure a = CellMeasure::uniform_on(P, Ball{{Rat(0)}, {1}}, Rat(1));
    CellMeasure b = CellMeasure::make(
        P, {{Ball{{Rat(0)}, {1}}, Rat(2, 3)}, {Ball{{Rat(1)}, {1}}, Rat(4, 3)}});
    CHECK(check_convolution(a, b, 3));
    CHECK(check_product(a, b, 3));
    // explicit convolution point: theta factorizes at one deep dual point
    std::vector<Rat> xi = {Rat(3, 8)};
    CycloValue lhs = theta(a.convolve(b), xi);
    CHECK(lhs.equals(theta(a, xi).times(theta(b, xi))));
}

TEST_CASE("quadratic pairing gap") {
    PrimePair P{2, 3};
    SazonovReport inside = sazonov_gap(P, {{Rat(2)}}, {Rat(1)});
    CHECK(inside.inside);
    CHECK(inside.pairing == Rat(2));
    SazonovReport outside = sazonov_gap(P, {{Rat(1, 2)}}, {Rat(1)});
    CHECK(!outside.inside);
    // two dimensional diagonal: pairing adds, norm takes the max
    SazonovReport d2 = sazonov_gap(P, {{Rat(2), Rat(0)}, {Rat(0), Rat(4)}},
                                   {Rat(1), Rat(1)});
    CHECK(d2.pairing == Rat(6));
    CHECK(d2.inside);
}

TEST_CASE("dual grid enumeration is the inversion order") {
    PrimePair P{2, 3};
    auto g1 = dual_grid(P.p, 2, 1);
    REQUIRE(g1.size() == 4);
    CHECK(g1[0][0] == Rat(0));
    CHECK(g1[1][0] == Rat(1, 4));
    CHECK(g1[2][0] == Rat(1, 2));
    CHECK(g1[3][0] == Rat(3, 4));
    auto g2 = dual_grid(P.p, 1, 2);
    REQUIRE(g2.size() == 4);
    // first coordinate moves fastest
    CHECK(g2[1][0] == Rat(1, 2));
    CHECK(g2[1][1] == Rat(0));
    CHECK(g2[2][0] == Rat(0));
    CHECK(g2[2][1] == Rat(1, 2));
}
