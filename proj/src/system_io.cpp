#include "veesys/system_io.hpp"

#include <fstream>

#include "veesys/error.hpp"
#include "veesys/parser.hpp"

namespace veesys {

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw InputError("expected a rational as \"p/q\" or an integer, got " + value.dump());
}

CovectorSystem system_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("covector system must be a JSON object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long>() < 1)
    throw InputError("'dimension' must be a positive integer");
  CovectorSystem s;
  s.dimension = doc["dimension"].get<std::size_t>();
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_array()) throw InputError("'parameters' must be an array of names");
    for (const auto& p : doc["parameters"]) {
      if (!p.is_string()) throw InputError("parameter names must be strings");
      s.parameters.push_back(p.get<std::string>());
    }
  }
  if (!doc.contains("covectors") || !doc["covectors"].is_array()) throw InputError("'covectors' must be an array");
  std::size_t index = 0;
  for (const auto& c : doc["covectors"]) {
    ScaledCovector sc;
    sc.label = c.value("label", "a" + std::to_string(index));
    const auto& r = c.contains("radicand") ? c["radicand"] : Json("1");
    if (r.is_number_integer())
      sc.radicand = ParamFunction(Rational(r.get<long>()));
    else if (r.is_string())
      sc.radicand = parse_scalar(r.get<std::string>(), s.parameters);
    else
      throw InputError("radicand of covector " + std::to_string(index) + " must be an expression string");
    if (!c.contains("direction") || !c["direction"].is_array())
      throw InputError("covector " + std::to_string(index) + " needs a 'direction' array");
    for (const auto& x : c["direction"]) sc.direction.push_back(rational_from_json(x));
    s.covectors.push_back(std::move(sc));
    ++index;
  }
  return s;
}

CovectorSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return system_from_json(doc);
}

Json to_json(const VectorQ& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const MatrixQ& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const ParamMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    out.push_back(r);
  }
  return out;
}

Json to_json(const CovectorSystem& system) {
  Json out;
  out["dimension"] = system.dimension;
  out["parameters"] = system.parameters;
  Json cov = Json::array();
  for (const auto& c : system.covectors)
    cov.push_back({{"label", c.label}, {"radicand", c.radicand.to_string()}, {"direction", to_json(c.direction)}});
  out["covectors"] = cov;
  return out;
}

Json to_json(const PlaneGroup& plane) {
  return {{"basis", to_json(plane.basis)}, {"members", plane.members}};
}

Json to_json(const ValidationReport& report) {
  Json out;
  out["ok"] = report.ok();
  out["dimension"] = report.dimension;
  out["rank"] = report.rank;
  Json pairs = Json::array();
  for (auto [i, j] : report.collinear_pairs) pairs.push_back({i, j});
  out["collinearPairs"] = pairs;
  out["zeroDirections"] = report.zero_directions;
  out["wrongLength"] = report.wrong_length;
  out["zeroRadicands"] = report.zero_radicands;
  out["messages"] = report.messages();
  return out;
}

Json to_json(const VeeVerdict& verdict) {
  Json out;
  out["holds"] = verdict.holds;
  Json planes = Json::array(), witnesses = Json::array();
  for (const auto& p : verdict.planes) {
    Json lam = Json::array();
    for (const auto& l : p.lambdas) lam.push_back(l ? Json(to_string(*l)) : Json(nullptr));
    Json entry = to_json(p.plane);
    entry["status"] = p.satisfied ? "satisfied" : "violated";
    entry["lambda"] = lam;
    planes.push_back(entry);
    if (!p.satisfied)
      witnesses.push_back({{"members", p.plane.members}, {"covector", *p.witness}, {"residual", to_json(p.residual)}});
  }
  out["planes"] = planes;
  out["witnesses"] = witnesses;
  return out;
}

Json to_json(const KohnoVerdict& verdict) {
  Json out;
  out["kohno"] = verdict.holds;
  Json groups = Json::array();
  for (const auto& g : verdict.groups) {
    Json entry = to_json(g.plane);
    entry["status"] = g.satisfied ? "satisfied" : "violated";
    if (!g.satisfied) entry["witness"] = {{"covector", *g.witness}, {"commutator", to_json(g.commutator)}};
    groups.push_back(entry);
  }
  out["groups"] = groups;
  return out;
}

Json to_json(const EquivalenceReport& report) {
  Json out;
  out["vee"] = report.vee;
  out["kohno"] = report.kohno;
  out["agree"] = report.agree();
  Json d = Json::array();
  for (const auto& p : report.discrepancies) d.push_back(to_json(p));
  out["discrepancies"] = d;
  return out;
}

namespace {

std::vector<double> doubles(const Json& a, const char* what) {
  std::vector<double> out;
  if (a.is_null()) return out;
  if (!a.is_array()) throw InputError(std::string("loop '") + what + "' must be an array of numbers");
  for (const auto& x : a) {
    if (!x.is_number()) throw InputError(std::string("loop '") + what + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

LoopSpec loop_from_json(const Json& doc, std::size_t dimension) {
  const Json* coords = &doc;
  LoopSpec spec;
  spec.dimension = dimension;
  if (doc.is_object()) {
    if (doc.contains("dimension")) spec.dimension = doc["dimension"].get<std::size_t>();
    if (!doc.contains("coords")) throw InputError("loop object needs 'coords'");
    coords = &doc["coords"];
  }
  if (!coords->is_array()) throw InputError("loop specification must be an array of coordinates");
  for (const auto& c : *coords) {
    FourierCoordinate fc;
    if (!c.contains("coord") || !c["coord"].is_number_integer()) throw InputError("loop entry needs integer 'coord'");
    fc.coord = c["coord"].get<std::size_t>();
    fc.mean = c.contains("mean") ? rational_from_json(c["mean"]) : Rational(0);
    fc.cos = doubles(c.value("cos", Json()), "cos");
    fc.sin = doubles(c.value("sin", Json()), "sin");
    spec.coords.push_back(std::move(fc));
  }
  return spec;
}

Json to_json(const LoopSpec& loop) {
  Json coords = Json::array();
  for (const auto& c : loop.coords)
    coords.push_back({{"coord", c.coord}, {"cos", c.cos}, {"sin", c.sin}, {"mean", to_string(c.mean)}});
  return {{"dimension", loop.dimension}, {"coords", coords}};
}

}  // namespace veesys
