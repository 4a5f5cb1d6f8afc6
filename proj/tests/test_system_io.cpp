#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "veesys/catalog.hpp"
#include "veesys/error.hpp"
#include "veesys/kohno.hpp"
#include "veesys/system_io.hpp"

using namespace veesys;
using oracle::q;

TEST_CASE("system documents") {
  const auto doc = Json::parse(R"({
    "dimension": 3,
    "parameters": ["t"],
    "covectors": [
      {"label": "a", "radicand": "2*t+1", "direction": ["1", "0", "0"]},
      {"label": "b", "radicand": "3/t", "direction": [0, 1, 0]},
      {"label": "c", "direction": ["1/2", "-1/2", "1"]}
    ]})");
  const auto s = system_from_json(doc);
  CHECK(s.dimension == 3);
  CHECK(s.parameters == std::vector<std::string>{"t"});
  REQUIRE(s.covectors.size() == 3);
  CHECK(s.covectors[2].direction == VectorQ{q(1, 2), q(-1, 2), 1});
  CHECK(s.covectors[2].radicand == Rational(1));
  CHECK(s.covectors[1].radicand.evaluate({{"t", 3}}) == 1);

  const auto back = system_from_json(to_json(s));
  CHECK(back.dimension == s.dimension);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(back.covectors[k].label == s.covectors[k].label);
    CHECK(back.covectors[k].radicand == s.covectors[k].radicand);
    CHECK(back.covectors[k].direction == s.covectors[k].direction);
  }
  for (const auto& b : list_builtins()) {
    const auto r = system_from_json(to_json(b.system));
    CHECK(r.covectors.size() == b.system.covectors.size());
    CHECK(to_json(r) == to_json(b.system));
  }
}

TEST_CASE("bad documents") {
  CHECK_THROWS_AS(system_from_json(Json::parse("[]")), InputError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"dimension": 0, "covectors": []})")), InputError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"dimension": 2})")), InputError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"dimension": 2, "covectors": [{"radicand": "1"}]})")), InputError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"dimension": 2, "covectors": [{"direction": ["1/0", "1"]}]})")),
                  ParseError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"dimension": 2, "covectors": [{"radicand": "x", "direction": [1, 1]}]})")),
                  ParseError);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"dimension": 2, "covectors": [{"direction": [1.5, 1]}]})")),
                  InputError);
  CHECK_THROWS_AS(load_system("/nonexistent/file.json"), InputError);

  const auto path = std::filesystem::temp_directory_path() / "veesys_bad.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_system(path.string()), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("rationals in JSON") {
  CHECK(rational_from_json(Json("-3/6")) == q(-1, 2));
  CHECK(rational_from_json(Json(7)) == 7);
  CHECK_THROWS(rational_from_json(Json(true)));
}

TEST_CASE("report shapes") {
  const auto nv = instantiate(nonvee3(), {}).system;
  const auto eq = crosscheck_equivalence(nv);
  const auto j = to_json(eq);
  CHECK(j["vee"] == false);
  CHECK(j["kohno"] == false);
  CHECK(j["agree"] == true);
  CHECK(j["discrepancies"].empty());

  const auto v = to_json(is_vee_system(nv));
  CHECK(v["holds"] == false);
  CHECK(v["planes"].size() == 6);
  CHECK_FALSE(v["witnesses"].empty());
  const auto k = to_json(has_kohno_property(nv));
  CHECK(k["kohno"] == false);
  CHECK(k["groups"].size() == 6);

  const auto r = to_json(validate(nv));
  CHECK(r["ok"] == true);
  CHECK(r["rank"] == 3);
  CHECK(to_json(MatrixQ{{1, q(1, 2)}, {0, -3}}).dump() == R"([["1","1/2"],["0","-3"]])");
}

TEST_CASE("loop documents") {
  const auto doc = Json::parse(R"([{"coord": 0, "mean": "2", "cos": [1.0]}, {"coord": 1, "mean": "5/2", "sin": [0.5, 0.25]}])");
  const auto spec = loop_from_json(doc, 2);
  CHECK(spec.dimension == 2);
  CHECK(spec.coords[1].mean == q(5, 2));
  CHECK(spec.coords[1].sin == std::vector<double>{0.5, 0.25});
  const auto again = loop_from_json(to_json(spec), 2);
  CHECK(again.coords[0].cos == spec.coords[0].cos);
  CHECK(again.coords[1].mean == spec.coords[1].mean);
  CHECK_THROWS_AS(LoopGrid(loop_from_json(Json::parse(R"([{"coord": 0}])"), 2), 16), InputError);
  CHECK_THROWS_AS(loop_from_json(Json::parse(R"([{"coord": 0, "cos": ["x"]}])"), 1), InputError);
}
