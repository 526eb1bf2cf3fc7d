#include <catch2/catch_amalgamated.hpp>

#include "uml/factor.hpp"
#include "uml/laurent.hpp"
#include "uml/rational.hpp"

using namespace uml;

TEST_CASE("integer and rational powers") {
    CHECK(ipow(2, 10) == 1024);
    CHECK(rpow(2, -3) == Rat(1, 8));
    CHECK(rpow(3, 0) == 1);
    CHECK(rpow(5, 2) == 25);
}

TEST_CASE("modular inverses") {
    for (long m : {3L, 5L, 16L, 81L}) {
        for (long a = 1; a < m; ++a) {
            if (boost::multiprecision::gcd(Int(a), Int(m)) != 1) continue;
            Int inv = mod_inverse(a, m);
            CHECK(mod_pos(inv * a, m) == 1);
        }
    }
    CHECK_THROWS(mod_inverse(2, 4));
}

TEST_CASE("rational text round trips") {
    for (const char* t : {"0", "5", "-5", "3/4", "-22/7", "100/9"}) {
        Rat r = parse_rat(t);
        CHECK(parse_rat(rat_str(r)) == r);
    }
    CHECK(rat_str(Rat(6, 4)) == "3/2");
    CHECK(rat_str(Rat(-8, 2)) == "-4");
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("abc"));
}

TEST_CASE("geometric closed forms match partial sums") {
    PrimePair P{2, 3};
    // sum over i >= i0 of r^i with |r|_s < 1
    auto rp = [](const Rat& b, long e) {
        Rat r = 1, base = e < 0 ? Rat(1) / b : b;
        for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
        return r;
    };
    for (long i0 : {-2L, 0L, 3L}) {
        Rat r(3, 5);
        Rat closed = geo_sum(P.s, r, i0);
        Rat partial = 0, term = rp(r, i0);
        for (int i = 0; i < 30; ++i) {
            partial += term;
            term *= r;
        }
        Rat gap = closed - partial;
        CHECK(gap != 0);
        CHECK(ord_rat(P.s, gap) >= 30 + std::min(i0, 0L));
    }
    CHECK(geo_sum(3, Rat(0), 0) == 1);
    CHECK(geo_sum(3, Rat(0), 2) == 0);
    CHECK(geo_sum(3, Rat(0), -1) == 1);
}

TEST_CASE("tail records know where they converge") {
    Int s = 3;
    TailRecord t{Rat(1, 2), Rat(6), 1, -1};  // (1/2) sum_{k>=1} 6^k T^-k
    CHECK(t.converges_at(s, Rat(1)));
    CHECK(!t.converges_at(s, Rat(3)));
    CHECK(t.converges_at(s, Rat(1, 3)));
    CHECK(t.sum_at(s, Rat(1)) == Rat(-3, 5));
    CHECK_THROWS(t.sum_at(s, Rat(3)));
    // partials approach the closed form s-adically
    Rat full = t.sum_at(s, Rat(1));
    for (long terms : {5L, 10L, 20L}) {
        Rat gap = full - t.partial_at(Rat(1), terms);
        CHECK(ord_rat(s, gap) == terms + 1);
    }
}

TEST_CASE("laurent objects evaluate exactly") {
    Int s = 3;
    LaurentT L = LaurentT::monomial(2, Rat(5));
    L = L.plus(LaurentT::monomial(-1, Rat(1, 2)));
    CHECK(L.evaluate(s, Rat(2)) == Rat(5) * 4 + Rat(1, 4));
    LaurentT tail;
    tail.add_tail(TailRecord{Rat(1), Rat(6), 0, -1});
    LaurentT sum = L.plus(tail.scaled(Rat(3)));
    // monomials plus a closed tail: 5 T^2 + (1/2) T^-1 + 3 sum_{k>=0} (6/T)^k
    Rat expect = Rat(5) * 4 + Rat(1, 4) + Rat(3) * (Rat(1) / (Rat(1) - Rat(3)));
    CHECK(sum.evaluate(s, Rat(2)) == expect);
    CHECK(!sum.is_zero());
    CHECK(LaurentT{}.is_zero());
    CHECK(sum.converges_for_norm(s, Rat(2)));
}

TEST_CASE("value-field norms keep p-powers invisible") {
    PrimePair P{2, 3};
    // powers of p are units in the value field, so scaling by p^k never
    // changes an s-norm
    for (long k : {-3L, -1L, 0L, 2L, 5L}) {
        Rat x(7, 9);
        CHECK(s_norm(P, x * rpow(P.p, k)) == s_norm(P, x));
    }
    CHECK(s_norm(P, Rat(27, 4)) == NormVal::pow_of(3, -3));
    CHECK(s_norm(P, Rat(4, 27)) == NormVal::pow_of(3, 3));
}
