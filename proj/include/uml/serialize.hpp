#ifndef UML_SERIALIZE_HPP
#define UML_SERIALIZE_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "uml/balls.hpp"
#include "uml/cyclo.hpp"
#include "uml/factor.hpp"
#include "uml/fourier.hpp"
#include "uml/measures.hpp"
#include "uml/quasi.hpp"
#include "uml/weakdist.hpp"

// Canonical JSON text formats.  All rationals are written as "num/den"
// (lowest terms, explicit denominator), so a canonicalized object always
// serializes to byte-identical text.  nlohmann::json keeps keys sorted.

namespace uml {

using Json = nlohmann::json;

inline std::string rat_text(const Rat& r) {
  return num(r).str() + "/" + den(r).str();
}

inline Rat rat_from_text(const std::string& t) { return parse_rat(t); }

inline Json rat_list(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rat_text(r));
  return a;
}

inline std::vector<Rat> rat_list_from(const Json& a) {
  if (!a.is_array()) throw std::runtime_error("expected array of rationals");
  std::vector<Rat> v;
  for (const auto& e : a) v.push_back(parse_rat(e.get<std::string>()));
  return v;
}

inline Json int_list(const std::vector<long>& v) {
  Json a = Json::array();
  for (long k : v) a.push_back(k);
  return a;
}

inline std::vector<long> int_list_from(const Json& a) {
  if (!a.is_array()) throw std::runtime_error("expected array of integers");
  std::vector<long> v;
  for (const auto& e : a) v.push_back(e.get<long>());
  return v;
}

inline Int int_from(const Json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long long>());
}

inline long long int_out(const Int& n) {
  return n.convert_to<long long>();
}

inline Json ball_json(const Ball& b) {
  Json c;
  c["center"] = rat_list(b.c);
  c["radius_exp"] = int_list(b.k);
  return c;
}

inline Ball ball_from_json(const Json& c) {
  return Ball{rat_list_from(c.at("center")), int_list_from(c.at("radius_exp"))};
}

// ---- measure/1 ------------------------------------------------------------

inline Json measure_to_json(const CellMeasure& mu) {
  Json j;
  j["format"] = "measure/1";
  j["p"] = int_out(mu.P.p);
  j["s"] = int_out(mu.P.s);
  j["dim"] = mu.dim();
  Json cells = Json::array();
  for (const auto& [b, d] : mu.cells) {
    Json c = ball_json(b);
    c["density"] = rat_text(d);
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j;
}

inline CellMeasure measure_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != "measure/1")
    throw std::runtime_error("not a measure/1 file");
  PrimePair P{int_from(j.at("p")), int_from(j.at("s"))};
  std::vector<std::pair<Ball, Rat>> cells;
  for (const auto& c : j.at("cells"))
    cells.emplace_back(ball_from_json(c), parse_rat(c.at("density").get<std::string>()));
  CellMeasure mu = CellMeasure::make(P, cells);
  if (!mu.cells.empty() && j.at("dim").get<std::size_t>() != mu.dim())
    throw std::runtime_error("dim field disagrees with cells");
  return mu;
}

// ---- set/1 ----------------------------------------------------------------

inline Json set_to_json(const Int& p, const ClopenSet& A) {
  Json j;
  j["format"] = "set/1";
  j["p"] = int_out(p);
  j["dim"] = A.dim();
  Json cells = Json::array();
  for (const auto& b : A.cells) cells.push_back(ball_json(b));
  j["cells"] = cells;
  return j;
}

inline std::pair<Int, ClopenSet> set_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != "set/1")
    throw std::runtime_error("not a set/1 file");
  Int p = int_from(j.at("p"));
  std::vector<Ball> balls;
  for (const auto& c : j.at("cells")) balls.push_back(ball_from_json(c));
  return {p, ClopenSet::of(p, balls)};
}

// ---- step/1 ---------------------------------------------------------------

inline Json step_to_json(const Int& p, const StepFunction& f) {
  Json j;
  j["format"] = "step/1";
  j["p"] = int_out(p);
  j["dim"] = f.dim();
  Json pieces = Json::array();
  for (const auto& [b, v] : f.pieces) {
    Json c = ball_json(b);
    c["value"] = rat_text(v);
    pieces.push_back(c);
  }
  j["pieces"] = pieces;
  return j;
}

inline std::pair<Int, StepFunction> step_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != "step/1")
    throw std::runtime_error("not a step/1 file");
  Int p = int_from(j.at("p"));
  std::vector<std::pair<Ball, Rat>> pieces;
  for (const auto& c : j.at("pieces"))
    pieces.emplace_back(ball_from_json(c), parse_rat(c.at("value").get<std::string>()));
  return {p, StepFunction::make(p, pieces)};
}

// ---- theta/1 --------------------------------------------------------------

inline Json cyclo_json(const CycloValue& v) {
  Json j;
  j["k"] = v.k;
  Json coef = Json::array();
  for (const auto& r : v.coef) coef.push_back(rat_text(r));
  j["coef"] = coef;
  return j;
}

inline CycloValue cyclo_from_json(const Int& p, const Json& j) {
  CycloValue v = CycloValue::zero(p, j.at("k").get<long>());
  const auto& coef = j.at("coef");
  if (coef.size() != v.coef.size())
    throw std::runtime_error("cyclotomic coefficient count mismatch");
  for (std::size_t i = 0; i < v.coef.size(); ++i)
    v.coef[i] = parse_rat(coef[i].get<std::string>());
  return v;
}

inline Json theta_to_json(const PrimePair& P, const ThetaTable& t) {
  Json j;
  j["format"] = "theta/1";
  j["p"] = int_out(P.p);
  j["s"] = int_out(P.s);
  j["dim"] = t.n;
  j["level"] = t.level;
  Json vals = Json::array();
  for (const auto& v : t.values) vals.push_back(cyclo_json(v));
  j["values"] = vals;
  return j;
}

inline std::pair<PrimePair, ThetaTable> theta_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != "theta/1")
    throw std::runtime_error("not a theta/1 file");
  PrimePair P{int_from(j.at("p")), int_from(j.at("s"))};
  ThetaTable t;
  t.level = j.at("level").get<long>();
  t.n = j.at("dim").get<std::size_t>();
  for (const auto& v : j.at("values")) t.values.push_back(cyclo_from_json(P.p, v));
  std::size_t want = 1;
  for (std::size_t i = 0; i < t.n; ++i)
    want *= ipow(P.p, t.level).convert_to<std::size_t>();
  if (t.values.size() != want)
    throw std::runtime_error("theta table has wrong number of entries");
  return {P, t};
}

// ---- tower/1 --------------------------------------------------------------

inline Json factor_json(const Factor& f) {
  Json j;
  if (const auto* sh = std::get_if<ShellFactor>(&f.v)) {
    j["kind"] = "shell";
    j["n"] = sh->n;
    j["normalized"] = sh->normalized;
  } else if (const auto* nu = std::get_if<NuFactor>(&f.v)) {
    j["kind"] = "nu";
    j["q"] = nu->q;
    j["e"] = nu->e;
    j["x0"] = rat_text(nu->x0);
  } else {
    const auto& cf = std::get<CellFactor>(f.v);
    j["kind"] = "cell";
    j["measure"] = measure_to_json(cf.m);
  }
  return j;
}

inline Factor factor_from_json(const PrimePair& P, const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "shell") {
    bool normalized = !j.contains("normalized") || j.at("normalized").get<bool>();
    return Factor::shell(j.at("n").get<long>(), normalized);
  }
  if (kind == "nu") {
    Rat x0 = j.contains("x0") ? parse_rat(j.at("x0").get<std::string>()) : Rat(0);
    return Factor::nu(j.at("q").get<long>(), j.at("e").get<long>(), x0);
  }
  if (kind == "cell") {
    CellMeasure m = measure_from_json(j.at("measure"));
    if (m.P.p != P.p || m.P.s != P.s)
      throw std::runtime_error("cell factor primes disagree with tower header");
    return Factor::cell(m);
  }
  throw std::runtime_error("unknown factor kind: " + kind);
}

inline Json tower_to_json(const Tower& T) {
  Json j;
  j["format"] = "tower/1";
  j["p"] = int_out(T.P.p);
  j["s"] = int_out(T.P.s);
  Json fs = Json::array();
  for (const auto& f : T.factors) fs.push_back(factor_json(f));
  j["factors"] = fs;
  return j;
}

inline Tower tower_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != "tower/1")
    throw std::runtime_error("not a tower/1 file");
  Tower T{PrimePair{int_from(j.at("p")), int_from(j.at("s"))}, {}};
  for (const auto& f : j.at("factors")) T.factors.push_back(factor_from_json(T.P, f));
  return T;
}

// ---- factors/1 (product-family exponent list) ------------------------------

inline Json beta_family_to_json(const Int& s, const BetaFamily& fam) {
  Json j;
  j["format"] = "factors/1";
  j["s"] = int_out(s);
  j["exponents"] = rat_list(fam.head);
  j["complete"] = fam.complete;
  j["tail_exp"] = rat_text(fam.tail_exp);
  return j;
}

inline std::pair<Int, BetaFamily> beta_family_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != "factors/1")
    throw std::runtime_error("not a factors/1 file");
  Int s = int_from(j.at("s"));
  BetaFamily fam;
  fam.head = rat_list_from(j.at("exponents"));
  fam.complete = j.at("complete").get<bool>();
  if (j.contains("tail_exp")) fam.tail_exp = parse_rat(j.at("tail_exp").get<std::string>());
  return {s, fam};
}

// ---- text + file plumbing ---------------------------------------------------

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline Json json_from_text(const std::string& text) {
  return Json::parse(text);
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return Json::parse(ss.str());
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline std::string file_format(const Json& j) {
  if (!j.contains("format")) throw std::runtime_error("missing format field");
  return j.at("format").get<std::string>();
}

}  // namespace uml

#endif
