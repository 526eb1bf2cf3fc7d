#include <catch2/catch_amalgamated.hpp>

#include "uml/serialize.hpp"

using namespace uml;

TEST_CASE("rationals always carry an explicit denominator") {
    CHECK(rat_text(Rat(0)) == "0/1");
    CHECK(rat_text(Rat(3)) == "3/1");
    CHECK(rat_text(Rat(-4, 6)) == "-2/3");
    CHECK(rat_from_text("0/1") == 0);
    CHECK(rat_from_text("-2/3") == Rat(-2, 3));
    CHECK_THROWS(rat_from_text("1/0"));
    CHECK_THROWS(rat_from_text("abc"));
}

TEST_CASE("measure files round trip byte for byte") {
    PrimePair P{2, 3};
    CellMeasure mu = CellMeasure::make(
        P, {{Ball{{Rat(1)}, {1}}, Rat(2, 3)}, {Ball{{Rat(0)}, {1}}, Rat(4, 3)}});
    std::string text = json_text(measure_to_json(mu));
    CellMeasure back = measure_from_json(json_from_text(text));
    CHECK(back.same_measure(mu));
    CHECK(json_text(measure_to_json(back)) == text);
    // cells arrive sorted regardless of construction order
    CHECK(back.cells.size() == 2);
    CHECK(back.cells[0].first.c[0] == 0);

    Json j = measure_to_json(mu);
    CHECK(file_format(j) == "measure/1");
    j["dim"] = 2;
    CHECK_THROWS(measure_from_json(j));
    Json k = measure_to_json(mu);
    k["format"] = "set/1";
    CHECK_THROWS(measure_from_json(k));
}

TEST_CASE("set files canonicalize on load") {
    Int p = 2;
    // two sibling halves fuse into the unit ball
    Json j;
    j["format"] = "set/1";
    j["p"] = 2;
    j["dim"] = 1;
    j["cells"] = Json::array();
    for (long c : {0L, 1L}) {
        Json cell;
        cell["center"] = Json::array({rat_text(Rat(c))});
        cell["radius_exp"] = Json::array({1});
        j["cells"].push_back(cell);
    }
    auto [q, A] = set_from_json(j);
    CHECK(q == p);
    REQUIRE(A.cells.size() == 1);
    CHECK(A.cells[0].k[0] == 0);
    // canonical object re-dumps identically
    std::string text = json_text(set_to_json(q, A));
    auto [q2, B] = set_from_json(json_from_text(text));
    CHECK(json_text(set_to_json(q2, B)) == text);
}

TEST_CASE("step files round trip") {
    Int p = 2;
    StepFunction f = StepFunction::make(
        p, {{Ball{{Rat(0)}, {1}}, Rat(3)}, {Ball{{Rat(1)}, {1}}, Rat(-1, 2)}});
    std::string text = json_text(step_to_json(p, f));
    auto [q, g] = step_from_json(json_from_text(text));
    CHECK(q == p);
    CHECK(json_text(step_to_json(q, g)) == text);
    CHECK(g.value_at(p, {Rat(5)}) == Rat(-1, 2));
    Json j = json_from_text(text);
    j["format"] = "measure/1";
    CHECK_THROWS(step_from_json(j));
}

TEST_CASE("transform tables round trip with their grid shape") {
    PrimePair P{2, 3};
    CellMeasure mu = CellMeasure::make(
        P, {{Ball{{Rat(0)}, {1}}, Rat(4, 3)}, {Ball{{Rat(1)}, {1}}, Rat(2, 3)}});
    ThetaTable t = theta_table(mu, 2);
    std::string text = json_text(theta_to_json(P, t));
    auto [Q, back] = theta_from_json(json_from_text(text));
    CHECK(Q.p == P.p);
    CHECK(Q.s == P.s);
    CHECK(back.level == t.level);
    CHECK(back.n == t.n);
    REQUIRE(back.values.size() == t.values.size());
    for (size_t i = 0; i < t.values.size(); ++i)
        CHECK(back.values[i].equals(t.values[i]));
    CHECK(json_text(theta_to_json(Q, back)) == text);
    // the inverse of the reloaded table is the original measure
    CHECK(invert_theta(Q, back).same_measure(mu));

    Json j = json_from_text(text);
    j["values"].erase(0);
    CHECK_THROWS(theta_from_json(j));
}

TEST_CASE("tower files carry all three factor kinds") {
    PrimePair P{2, 3};
    Tower T{P, {Factor::shell(2, false), Factor::nu(2, 1, Rat(1, 2)),
                Factor::cell(CellMeasure::haar_unit(P, 1))}};
    std::string text = json_text(tower_to_json(T));
    Tower back = tower_from_json(json_from_text(text));
    REQUIRE(back.factors.size() == 3);
    CHECK(json_text(tower_to_json(back)) == text);
    auto* sh = std::get_if<ShellFactor>(&back.factors[0].v);
    REQUIRE(sh);
    CHECK(sh->n == 2);
    CHECK(!sh->normalized);
    auto* nu = std::get_if<NuFactor>(&back.factors[1].v);
    REQUIRE(nu);
    CHECK(nu->q == 2);
    CHECK(nu->e == 1);
    CHECK(nu->x0 == Rat(1, 2));
    auto* cf = std::get_if<CellFactor>(&back.factors[2].v);
    REQUIRE(cf);
    CHECK(cf->m.same_measure(CellMeasure::haar_unit(P, 1)));

    // omitted optional fields take their defaults
    Json j = json_from_text(text);
    j["factors"][0].erase("normalized");
    j["factors"][1].erase("x0");
    Tower d = tower_from_json(j);
    CHECK(std::get<ShellFactor>(d.factors[0].v).normalized);
    CHECK(std::get<NuFactor>(d.factors[1].v).x0 == 0);

    // embedded measures must share the tower's primes
    Json bad = json_from_text(text);
    bad["factors"][2]["measure"]["s"] = 5;
    CHECK_THROWS(tower_from_json(bad));
}

TEST_CASE("exponent-family files round trip") {
    BetaFamily fam;
    fam.head = {Rat(1), Rat(2), Rat(1, 2)};
    fam.complete = false;
    fam.tail_exp = Rat(3);
    std::string text = json_text(beta_family_to_json(3, fam));
    auto [s, back] = beta_family_from_json(json_from_text(text));
    CHECK(s == 3);
    CHECK(back.head == fam.head);
    CHECK(back.complete == fam.complete);
    CHECK(back.tail_exp == fam.tail_exp);
    CHECK(json_text(beta_family_to_json(s, back)) == text);
}

TEST_CASE("malformed input is rejected loudly") {
    CHECK_THROWS(json_from_text("{not json"));
    Json j;
    j["p"] = 2;
    CHECK_THROWS(file_format(j));
    j["format"] = "tower/1";
    CHECK_THROWS(tower_from_json(Json{{"format", "tower/1"}})); // missing fields
    Json f;
    f["format"] = "factors/1";
    f["s"] = 3;
    f["exponents"] = Json::array({"1/2", "x"});
    f["complete"] = true;
    CHECK_THROWS(beta_family_from_json(f));
}
