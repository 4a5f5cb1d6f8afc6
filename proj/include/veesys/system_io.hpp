#pragma once

#include <json.hpp>
#include <string>

#include "veesys/frobenius.hpp"
#include "veesys/kohno.hpp"
#include "veesys/spectral.hpp"
#include "veesys/system.hpp"
#include "veesys/vee.hpp"

namespace veesys {

using Json = nlohmann::ordered_json;

/// {"dimension": n, "parameters": [...], "covectors": [{"label", "radicand", "direction"}]}
/// Rationals are strings "p" or "p/q" (plain JSON integers are accepted too).
/// Throws InputError / ParseError.
CovectorSystem system_from_json(const Json& doc);
CovectorSystem load_system(const std::string& path);
Json to_json(const CovectorSystem& system);

Json to_json(const VectorQ& v);
Json to_json(const MatrixQ& m);
Json to_json(const ParamMatrix& m);
Json to_json(const PlaneGroup& plane);
Json to_json(const ValidationReport& report);
Json to_json(const VeeVerdict& verdict);
Json to_json(const KohnoVerdict& verdict);
Json to_json(const EquivalenceReport& report);

Rational rational_from_json(const Json& value);

/// [{"coord": i, "cos": [...], "sin": [...], "mean": "p/q"}, ...] or an
/// object {"dimension": n, "coords": [...]}.
LoopSpec loop_from_json(const Json& doc, std::size_t dimension);
Json to_json(const LoopSpec& loop);

}  // namespace veesys
