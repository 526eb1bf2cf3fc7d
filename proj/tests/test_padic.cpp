#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uml/balls.hpp"
#include "uml/padic.hpp"
#include "uml/shells.hpp"

using namespace uml;

namespace {
Rat rand_point(std::mt19937_64& rng, const Int& p) {
    long n = 1 + (long)(rng() % 40);
    long d = 1 + (long)(rng() % 40);
    long sign = rng() % 2 ? 1 : -1;
    return Rat(sign * n, d);
}
}  // namespace

TEST_CASE("valuations of rationals") {
    CHECK(ord_rat(2, Rat(8)) == 3);
    CHECK(ord_rat(2, Rat(5, 8)) == -3);
    CHECK(ord_rat(3, Rat(18, 5)) == 2);
    CHECK(ord_rat(7, Rat(5, 3)) == 0);
    CHECK_THROWS(ord_rat(2, Rat(0)));
    CHECK(!ord_opt(2, Rat(0)).has_value());
}

TEST_CASE("norms are ultrametric") {
    PrimePair P{2, 3};
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Rat x = rand_point(rng, 2), y = rand_point(rng, 2);
        NormVal nx = k_norm(P, x), ny = k_norm(P, y), nxy = k_norm(P, x + y);
        NormVal m = nx < ny ? ny : nx;
        CHECK(nxy <= m);
        if (!(nx == ny)) CHECK(nxy == m);
    }
    CHECK(k_norm(P, Rat(0)).zero);
    CHECK(s_norm(P, Rat(9, 2)) == NormVal::pow_of(3, -2));
    CHECK(NormVal::pow_of(3, -2).str() == "3^-2");
}

TEST_CASE("fractional part splits off the polar tail") {
    // x - fractional_part(x) is a p-adic integer, and the part is in [0,1)
    std::mt19937_64 rng(7);
    for (const Int& p : {Int(2), Int(3), Int(5)}) {
        for (int i = 0; i < 100; ++i) {
            Rat x = rand_point(rng, p);
            Rat f = fractional_part(p, x);
            CHECK(f >= 0);
            CHECK(f < 1);
            Rat rest = x - f;
            if (rest != 0) CHECK(ord_rat(p, rest) >= 0);
            if (f != 0) {
                long o = ord_rat(p, f);
                CHECK(o < 0);
                CHECK(den(f) == ipow(p, -o));
            }
        }
    }
    CHECK(fractional_part(2, Rat(5, 2)) == Rat(1, 2));
    CHECK(fractional_part(2, Rat(3)) == 0);
    CHECK(fractional_part(3, Rat(-1, 3)) == Rat(2, 3));
}

TEST_CASE("canonical centers name each ball uniquely") {
    CHECK(canonical_center(2, Rat(7, 3), 1) == Rat(1));
    CHECK(canonical_center(2, Rat(0), 3) == Rat(0));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        Rat c = rand_point(rng, 2);
        long k = -3 + (long)(rng() % 7);
        Ball a{{c}, {k}}, b{{canonical_center(2, c, k)}, {k}};
        CHECK(a.contains(2, b));
        CHECK(b.contains(2, a));
        // canonical representative is already reduced
        CHECK(canonical_center(2, b.c[0], k) == b.c[0]);
    }
}

TEST_CASE("balls are disjoint or nested") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Rat c1 = rand_point(rng, 2), c2 = rand_point(rng, 2);
        long k1 = -2 + (long)(rng() % 6), k2 = -2 + (long)(rng() % 6);
        Ball a{{c1}, {k1}}, b{{c2}, {k2}};
        bool rel = a.disjoint(2, b) || a.contains(2, b) || b.contains(2, a);
        CHECK(rel);
    }
}

TEST_CASE("set algebra on clopen pieces") {
    Int p = 2;
    ClopenSet z = ClopenSet::of(p, {Ball::unit(1)});
    ClopenSet even = ClopenSet::of(p, {Ball{{Rat(0)}, {1}}});
    ClopenSet odd = z.subtract(p, even);
    REQUIRE(odd.cells.size() == 1);
    CHECK(odd.cells[0].c[0] == Rat(1));
    CHECK(odd.cells[0].k[0] == 1);
    CHECK(z.same_set(p, even.unite(p, odd)));
    CHECK(even.intersect(p, odd).empty());
    CHECK(odd.subset_of(p, z));
    CHECK(!z.subset_of(p, odd));
    CHECK(z.haar(p) == 1);
    CHECK(odd.haar(p) == Rat(1, 2));
}

TEST_CASE("complete sibling families collapse to their parent") {
    Int p = 3;
    std::vector<Ball> thirds;
    for (long d = 0; d < 3; ++d) thirds.push_back(Ball{{Rat(d)}, {1}});
    ClopenSet s = ClopenSet::of(p, thirds);
    REQUIRE(s.cells.size() == 1);
    CHECK(s.cells[0].k[0] == 0);
    CHECK(s.same_set(p, ClopenSet{{Ball::unit(1)}}));
}

TEST_CASE("random unions have exact haar and stable canonical form") {
    std::mt19937_64 rng(13);
    Int p = 2;
    for (int i = 0; i < 50; ++i) {
        std::vector<Ball> balls;
        for (int b = 0; b < 5; ++b) {
            Rat c = rand_point(rng, p);
            balls.push_back(Ball{{c}, {-1 + (long)(rng() % 4)}});
        }
        ClopenSet A = ClopenSet::of(p, balls);
        // serialize-stable: rebuilding from its own cells is the identity
        ClopenSet B = ClopenSet::of(p, A.cells);
        REQUIRE(A.cells.size() == B.cells.size());
        for (size_t k = 0; k < A.cells.size(); ++k) CHECK(A.cells[k] == B.cells[k]);
        // haar of the union is the sum over the disjoint canonical cells
        Rat h = 0;
        for (const auto& c : A.cells) h += c.haar(p);
        CHECK(h == A.haar(p));
        // inclusion-exclusion against a random ball
        Ball probe{{rand_point(rng, p)}, {(long)(rng() % 3)}};
        ClopenSet Pb{{probe.canonical(p)}};
        Rat lhs = A.unite(p, Pb).haar(p) + A.intersect(p, Pb).haar(p);
        CHECK(lhs == A.haar(p) + Pb.haar(p));
    }
}

TEST_CASE("spheres tile the unit ball") {
    Int p = 2;
    ClopenSet acc = ClopenSet::of(p, {ord_ball(4)});
    for (long j = 3; j >= 0; --j) acc = acc.unite(p, sphere(p, j));
    CHECK(acc.same_set(p, ClopenSet{{Ball::unit(1)}}));
    CHECK(sphere_haar(p, 2) == Rat(1, 8));
    CHECK(sphere(p, 2).haar(p) == Rat(1, 8));
}

TEST_CASE("multi-dimensional balls and shifts") {
    Int p = 2;
    Ball cube = Ball::unit(2);
    auto kids = cube.split(p, 0);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].haar(p) == Rat(1, 2));
    ClopenSet C{{cube}};
    ClopenSet moved = C.shifted(p, {Rat(1, 2), Rat(0)});
    CHECK(moved.haar(p) == 1);
    CHECK(moved.intersect(p, C).empty());
    CHECK(moved.shifted(p, {Rat(-1, 2), Rat(0)}).same_set(p, C));
}

TEST_CASE("prime pair validation") {
    CHECK_THROWS((PrimePair{4, 3}));
    CHECK_THROWS((PrimePair{2, 2}));
    CHECK_NOTHROW((PrimePair{5, 7}));
}
