#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "veesys/catalog.hpp"
#include "veesys/error.hpp"
#include "veesys/frobenius.hpp"
#include "veesys/hamiltonian.hpp"
#include "veesys/hierarchy.hpp"
#include "veesys/kohno.hpp"
#include "veesys/parser.hpp"
#include "veesys/system_io.hpp"
#include "veesys/vee.hpp"

using namespace veesys;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct Options {
  std::string input;
  std::string builtin;
  std::vector<std::string> params;
  std::optional<std::string> path;
  std::vector<std::string> at;
  std::optional<std::size_t> points;
  std::size_t grid = 64;
  int levels = 5;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format = "text";

  bool json() const { return format == "json"; }
  double tolerance() const { return tol.value_or(1e-8); }
};

// Report plus exit code; text output is a list of lines.
struct Outcome {
  Json report = Json::object();
  std::vector<std::string> text;
  int code = kOk;
};

bool is_poly_builtin(const std::string& name) {
  const auto names = poly_frobenius_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

struct Source {
  CovectorSystem family;
  std::optional<BuiltinFamily> builtin;
};

Source load_source(const Options& o) {
  if (o.input.empty() == o.builtin.empty()) throw InputError("exactly one of --input and --builtin is required");
  Source s;
  if (!o.input.empty()) {
    s.family = load_system(o.input);
    return s;
  }
  if (is_poly_builtin(o.builtin))
    throw InputError("'" + o.builtin + "' is a polynomial structure, not a covector system");
  s.builtin = find_builtin(o.builtin);
  if (!s.builtin) throw InputError("unknown builtin '" + o.builtin + "' (see list-builtin)");
  s.family = s.builtin->system;
  return s;
}

Bindings parse_bindings(const Options& o) {
  Bindings b;
  auto add = [&](const std::string& entry) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected name=value, got '" + entry + "'");
    std::string name = entry.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
    b[name] = parse_scalar(entry.substr(eq + 1), {}).constant_value();
  };
  for (const auto& p : o.params) add(p);
  for (const auto& p : o.at) add(p);
  return b;
}

std::string describe(const ValidationReport& r) {
  std::string s;
  for (const auto& m : r.messages()) s += (s.empty() ? "" : "; ") + m;
  return s;
}

ConcreteSystem concrete_system(const Source& src, const Bindings& b, Json* report = nullptr) {
  const auto symbolic = validate(src.family);
  if (!symbolic.collinear_pairs.empty() || !symbolic.zero_directions.empty() || !symbolic.wrong_length.empty())
    throw InputError("invalid covector system: " + describe(symbolic));
  Bindings used;
  for (const auto& p : src.family.parameters) {
    const auto it = b.find(p);
    if (it == b.end()) throw InputError("parameter '" + p + "' is unbound; pass --param " + p + "=value");
    used[p] = it->second;
  }
  const auto inst = instantiate(src.family, used);
  const auto v = validate(inst.system);
  if (!v.ok()) throw InputError("invalid covector system: " + describe(v));
  if (report && !inst.dropped.empty()) (*report)["droppedCovectors"] = inst.dropped;
  return inst.system;
}

std::string matrix_text(const MatrixQ& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]\n";
  }
  return s;
}

std::string matrix_text(const ParamMatrix& m) {
  std::string s;
  for (const auto& row : m) {
    s += "  [";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + row[j].to_string();
    s += "]\n";
  }
  return s;
}

std::string vector_text(const VectorQ& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string members_text(const std::vector<std::size_t>& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + "}";
}

// ---- regularization paths

struct PathChoice {
  std::string parameter;
  ParamFunction value;
  std::string text;
};

PathChoice resolve_path(const Source& src, const std::optional<std::string>& spec) {
  std::vector<std::string> vars = src.family.parameters;
  vars.push_back(kPathVariable);
  auto documented = [&](const DegenerationPath& d) {
    return PathChoice{d.parameter, parse_scalar(d.value, vars), d.parameter + " = " + d.value};
  };
  if (!spec || spec->empty()) {
    if (!src.builtin || src.builtin->degenerations.empty())
      throw InputError("--path name=value is required for this system");
    return documented(src.builtin->degenerations.front());
  }
  const auto eq = spec->find('=');
  if (eq == std::string::npos) throw InputError("--path expects name=value, got '" + *spec + "'");
  std::string name = spec->substr(0, eq);
  name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
  if (std::find(src.family.parameters.begin(), src.family.parameters.end(), name) == src.family.parameters.end())
    throw InputError("--path names unknown parameter '" + name + "'");
  const ParamFunction value = parse_scalar(spec->substr(eq + 1), vars);
  const auto& vv = value.vars();
  if (std::find(vv.begin(), vv.end(), kPathVariable) != vv.end()) return {name, value, name + " = " + value.to_string()};
  if (src.builtin)
    for (const auto& d : src.builtin->degenerations) {
      if (d.parameter != name) continue;
      const auto p = parse_scalar(d.value, vars);
      if (p.substitute(kPathVariable, Rational(0)) == value) return documented(d);
    }
  const ParamFunction along = value + ParamFunction::variable(kPathVariable);
  return {name, along, name + " = " + along.to_string()};
}

// ---- Frobenius sources

struct FrobeniusSource {
  std::optional<FrobeniusData> data;
  std::optional<PolyFrobenius> poly;
  std::string label;
  Json info = Json::object();
};

FrobeniusSource frobenius_source(const Options& o) {
  FrobeniusSource fs;
  if (!o.builtin.empty() && is_poly_builtin(o.builtin)) {
    fs.poly = builtin_poly_frobenius(o.builtin);
    fs.data = fs.poly->frobenius();
    fs.label = "polynomial potential " + o.builtin;
    return fs;
  }
  const Source src = load_source(o);
  const Bindings b = parse_bindings(o);
  if (o.path) {
    const auto path = resolve_path(src, o.path);
    const auto reg = regularize(src.family, path.parameter, path.value);
    Bindings used;
    for (const auto& p : reg.parameters) {
      const auto it = b.find(p);
      if (it == b.end()) throw InputError("parameter '" + p + "' is unbound; pass --at " + p + "=value");
      used[p] = it->second;
    }
    fs.data = instantiate_regularized(reg, used);
    fs.label = "regularized along " + path.text;
    fs.info["path"] = path.text;
    return fs;
  }
  const auto sys = concrete_system(src, b, &fs.info);
  const auto g = gram_metric(sys);
  if (!g.nonsingular())
    throw SingularMatrixError(g.rank, "Gram metric is singular; pass --path to regularize");
  fs.data = FrobeniusData::from_system(sys);
  fs.label = "covector system";
  return fs;
}

std::vector<VectorQ> sample_points(const FrobeniusData& data, Rng& rng, std::size_t count) {
  std::vector<VectorQ> pts;
  for (std::size_t k = 0; k < count; ++k) pts.push_back(sample_admissible_point(data, rng));
  return pts;
}

// Points for polynomial sources: small rationals, no hyperplanes to avoid.
std::vector<VectorQ> poly_points(std::size_t n, Rng& rng, std::size_t count) {
  std::vector<VectorQ> pts;
  for (std::size_t k = 0; k < count; ++k) {
    VectorQ u(n);
    for (auto& x : u) x = rng.small_rational(9, 4);
    pts.push_back(u);
  }
  return pts;
}

std::vector<VectorQ> points_for(const FrobeniusSource& fs, Rng& rng, std::size_t count) {
  return fs.poly ? poly_points(fs.poly->n, rng, count) : sample_points(*fs.data, rng, count);
}

// ---- commands

Outcome cmd_validate(const Options& o) {
  Outcome out;
  const Source src = load_source(o);
  const Bindings b = parse_bindings(o);
  ValidationReport r;
  bool bound = true;
  for (const auto& p : src.family.parameters) bound = bound && b.count(p);
  if (bound && !src.family.parameters.empty()) {
    Bindings used;
    for (const auto& p : src.family.parameters) used[p] = b.at(p);
    const auto inst = instantiate(src.family, used);
    r = validate(inst.system);
    out.report["droppedCovectors"] = inst.dropped;
  } else {
    r = validate(src.family);
  }
  out.report["validation"] = to_json(r);
  out.text.push_back(std::string("valid: ") + (r.ok() ? "yes" : "no"));
  out.text.push_back("rank " + std::to_string(r.rank) + " of " + std::to_string(r.dimension));
  for (const auto& m : r.messages()) out.text.push_back("  " + m);
  out.code = r.ok() ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_check_vee(const Options& o) {
  Outcome out;
  const auto sys = concrete_system(load_source(o), parse_bindings(o), &out.report);
  const auto v = is_vee_system(sys);
  out.report.update(to_json(v));
  out.text.push_back(std::string("vee-system: ") + (v.holds ? "yes" : "no"));
  for (const auto& p : v.planes) {
    std::string line = "  plane " + members_text(p.plane.members) + ": " + (p.satisfied ? "satisfied" : "violated");
    if (p.satisfied && !p.lambdas.empty() && p.lambdas.front()) line += ", lambda " + to_string(*p.lambdas.front());
    if (p.witness) line += ", witness covector " + std::to_string(*p.witness) + " residual " + vector_text(p.residual);
    out.text.push_back(line);
  }
  out.code = v.holds ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_check_kohno(const Options& o) {
  Outcome out;
  const auto sys = concrete_system(load_source(o), parse_bindings(o), &out.report);
  const auto k = has_kohno_property(sys);
  out.report.update(to_json(k));
  out.text.push_back(std::string("Kohno property: ") + (k.holds ? "yes" : "no"));
  for (const auto& g : k.groups) {
    std::string line = "  group " + members_text(g.plane.members) + ": " + (g.satisfied ? "satisfied" : "violated");
    if (g.witness) line += ", witness covector " + std::to_string(*g.witness);
    out.text.push_back(line);
  }
  out.code = k.holds ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_check_equivalence(const Options& o) {
  Outcome out;
  const auto sys = concrete_system(load_source(o), parse_bindings(o), &out.report);
  const auto e = crosscheck_equivalence(sys);
  out.report.update(to_json(e));
  out.text.push_back(std::string("vee: ") + (e.vee ? "true" : "false") + ", kohno: " + (e.kohno ? "true" : "false") +
                     ", agree: " + (e.agree() ? "true" : "false"));
  for (const auto& d : e.discrepancies) out.text.push_back("  discrepancy on plane " + members_text(d.members));
  out.code = (e.vee && e.kohno && e.discrepancies.empty()) ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_gram(const Options& o) {
  Outcome out;
  const Source src = load_source(o);
  const Bindings b = parse_bindings(o);
  bool bound = true;
  for (const auto& p : src.family.parameters) bound = bound && b.count(p);
  if (!bound) {
    const auto g = symbolic_gram(src.family);
    out.report["parameters"] = src.family.parameters;
    out.report["gram"] = to_json(g);
    out.text.push_back("Gram metric in " + std::to_string(src.family.parameters.size()) + " parameter(s):");
    out.text.push_back(matrix_text(g));
    return out;
  }
  const auto sys = concrete_system(src, b, &out.report);
  const auto g = gram_metric(sys);
  out.report["gram"] = to_json(g.matrix);
  out.report["rank"] = g.rank;
  out.report["inverse"] = g.inverse ? to_json(*g.inverse) : Json();
  out.text.push_back("Gram metric (rank " + std::to_string(g.rank) + "):");
  out.text.push_back(matrix_text(g.matrix));
  if (g.inverse) {
    out.text.push_back("inverse:");
    out.text.push_back(matrix_text(*g.inverse));
  }
  return out;
}

Outcome cmd_regularize(const Options& o) {
  Outcome out;
  const Source src = load_source(o);
  const Bindings b = parse_bindings(o);
  const auto path = resolve_path(src, o.path);
  const auto reg = regularize(src.family, path.parameter, path.value);
  out.report["path"] = path.text;
  out.report["order"] = reg.order;
  out.report["parameters"] = reg.parameters;
  out.report["droppedCovectors"] = reg.dropped;
  out.report["symbolicMetric"] = to_json(reg.metric);
  out.text.push_back("path " + path.text + ", order " + std::to_string(reg.order));
  out.text.push_back("dropped: " + std::to_string(reg.dropped.size()));
  for (const auto& d : reg.dropped) out.text.push_back("  " + d);
  out.text.push_back("regularized metric:");
  out.text.push_back(matrix_text(reg.metric));

  bool bound = true;
  Bindings used;
  for (const auto& p : reg.parameters) {
    bound = bound && b.count(p);
    if (b.count(p)) used[p] = b.at(p);
  }
  if (bound) {
    const auto data = instantiate_regularized(reg, used);
    out.report["metric"] = to_json(data.metric());
    const auto sum = endomorphism_sum(data);
    out.report["endomorphismSum"] = to_json(sum);
    out.report["productHasUnity"] = !sum.is_zero();
    out.text.push_back("at the given parameters:");
    out.text.push_back(matrix_text(data.metric()));
    out.text.push_back(std::string("sum of rho: ") + (sum.is_zero() ? "zero (no unity)" : "nonzero"));
  }
  return out;
}

Json point_json(const VectorQ& u) { return to_json(u); }

Outcome cmd_build_frobenius(const Options& o) {
  Outcome out;
  auto fs = frobenius_source(o);
  const FrobeniusData& data = *fs.data;
  Rng rng(o.seed);
  const auto pts = points_for(fs, rng, o.points.value_or(20));
  const auto mu = fs.poly ? std::nullopt : unity_scale(data);
  out.report["source"] = fs.label;
  out.report.update(fs.info);
  out.report["metric"] = to_json(data.metric());
  out.report["droppedCovectors"] = data.dropped();
  out.report["unityScale"] = mu ? Json(to_string(*mu)) : Json();
  Json reports = Json::array();
  bool ok = true;
  std::size_t failures = 0;
  for (const auto& u : pts) {
    const Tensor3 c = structure_constants_at(data, u);
    const Tensor3 f = third_deriv_potential_at(data, u);
    const Tensor4 dc = d_structure_constants_at(data, u);
    Json r;
    r["point"] = point_json(u);
    r["potentiality"] = potentiality_holds(data.metric(), c, f);
    r["associativity"] = associativity_holds(c);
    r["invariance"] = invariance_holds(data.metric_inverse(), c);
    r["nablaCSymmetry"] = nabla_c_symmetry_holds(dc);
    r["hertlingManin"] = hertling_manin_holds(c, dc);
    if (mu && *mu != 0) r["unity"] = check_unity_at(data, u, *mu);
    bool point_ok = r["potentiality"] && r["associativity"] && r["invariance"];
    // regularized structures: nabla c and Hertling-Manin are reported only
    if (!data.regularized()) point_ok = point_ok && r["nablaCSymmetry"] && r["hertlingManin"];
    if (r.contains("unity")) point_ok = point_ok && r["unity"];
    failures += !point_ok;
    ok = ok && point_ok;
    reports.push_back(r);
  }
  out.report["samplePointReports"] = reports;
  out.report["ok"] = ok;
  out.text.push_back("source: " + fs.label);
  out.text.push_back("metric:");
  out.text.push_back(matrix_text(data.metric()));
  if (!data.dropped().empty()) out.text.push_back("dropped covectors: " + std::to_string(data.dropped().size()));
  out.text.push_back(mu ? "unity scale: " + to_string(*mu) : "unity scale: none");
  out.text.push_back(std::to_string(pts.size() - failures) + "/" + std::to_string(pts.size()) +
                     " sample points pass potentiality, associativity, invariance, nabla-c symmetry, Hertling-Manin");
  out.code = ok ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_check_wdvv(const Options& o) {
  Outcome out;
  auto fs = frobenius_source(o);
  Rng rng(o.seed);
  const auto pts = points_for(fs, rng, o.points.value_or(20));
  Json failing = Json::array();
  for (const auto& u : pts)
    if (!check_associativity_at(*fs.data, u)) failing.push_back(point_json(u));
  out.report["source"] = fs.label;
  out.report["points"] = pts.size();
  out.report["wdvv"] = failing.empty();
  out.report["failingPoints"] = failing;
  out.text.push_back("WDVV (commuting multiplication matrices) at " + std::to_string(pts.size()) +
                     " points: " + (failing.empty() ? "holds" : "fails at " + std::to_string(failing.size())));
  out.code = failing.empty() ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_check_poisson(const Options& o) {
  Outcome out;
  auto fs = frobenius_source(o);
  const FrobeniusData& data = *fs.data;
  const auto set = default_affinors(data);
  Rng rng(o.seed);
  const auto pts = points_for(fs, rng, o.points.value_or(20));
  out.report["source"] = fs.label;
  out.report.update(fs.info);
  out.report["affinors"] = set.origin;
  out.report["affinorCount"] = set.size();
  Json reports = Json::array();
  bool ok = true;
  for (const auto& u : pts) {
    const auto r = check_poisson_conditions_at(data, set, u);
    Json j;
    j["point"] = point_json(u);
    j["symmetry"] = r.symmetry;
    j["commutativity"] = r.commutativity;
    j["zerocurv"] = r.zerocurv;
    if (r.symmetry_witness) j["symmetryWitness"] = {r.symmetry_witness->first, r.symmetry_witness->second};
    if (r.commutativity_witness)
      j["commutativityWitness"] = {r.commutativity_witness->first, r.commutativity_witness->second};
    ok = ok && r.ok();
    reports.push_back(j);
  }
  out.report["pointReports"] = reports;
  out.report["ok"] = ok;
  out.text.push_back("source: " + fs.label + ", " + std::to_string(set.size()) + " affinors (" + set.origin + ")");
  std::size_t good = 0;
  for (const auto& r : reports) good += r["symmetry"] && r["commutativity"] && r["zerocurv"];
  out.text.push_back(std::to_string(good) + "/" + std::to_string(pts.size()) +
                     " points satisfy symmetry, commutativity and zerocurv for all pairs");
  out.code = ok ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_loop_test(const Options& o) {
  Outcome out;
  auto fs = frobenius_source(o);
  const FrobeniusData& data = *fs.data;
  const NonlocalOperator op(data);
  Rng rng(o.seed);
  const std::size_t loops = o.points.value_or(10);
  const double tol = o.tolerance();
  LoopOptions lo;
  if (fs.poly) {
    lo.box = 0.5;
    lo.spread = 0.4;
  }
  double worst_form = 0, worst_skew = 0;
  Json rows = Json::array();
  for (std::size_t k = 0; k < loops; ++k) {
    const LoopGrid loop(random_loop(data, rng, lo), o.grid);
    const auto f = project_admissible(op, loop, random_field(loop, rng));
    const auto g = project_admissible(op, loop, random_field(loop, rng));
    const auto pa = apply_nonlocal(op, loop, g);
    Json row;
    row["loop"] = to_json(loop.spec());
    if (op.has_table()) {
      const auto pb = apply_nonlocal_double_sum(op, loop, g);
      const double rel = sup_diff(pa, pb) / std::max(1.0, sup_norm(pa));
      row["formAgreement"] = rel;
      worst_form = std::max(worst_form, rel);
    }
    const double skew = skew_symmetry_test(op, loop, f, g);
    row["skewResidual"] = skew;
    worst_skew = std::max(worst_skew, skew);
    rows.push_back(row);
  }
  const bool ok = worst_skew < tol && worst_form < 1e-10;
  out.report["source"] = fs.label;
  out.report["grid"] = o.grid;
  out.report["tolerance"] = tol;
  out.report["affinors"] = op.affinors().origin;
  out.report["maxFormDifference"] = op.has_table() ? Json(worst_form) : Json();
  out.report["maxSkewResidual"] = worst_skew;
  out.report["loops"] = rows;
  out.report["ok"] = ok;
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << loops << " loops at N = " << o.grid << ": max skew residual " << worst_skew;
  if (op.has_table()) s << ", max form difference " << worst_form;
  out.text.push_back(s.str());
  out.code = ok ? kOk : kCheckFailed;
  return out;
}

Json density_json(const MPoly& h) {
  Json terms = Json::array();
  for (const auto& [e, c] : h.terms()) terms.push_back({{"exponents", e}, {"coefficient", to_string(c)}});
  return terms;
}

Outcome cmd_hierarchy(const Options& o) {
  Outcome out;
  const std::string name = o.builtin.empty() ? "kdv2d" : o.builtin;
  if (!o.input.empty()) throw InputError("hierarchy runs on polynomial builtins only (--builtin NAME)");
  if (!is_poly_builtin(name)) throw InputError("unknown polynomial structure '" + name + "'");
  if (o.levels < 1) throw InputError("--levels must be at least 1");
  const auto d = builtin_poly_frobenius(name);
  const double tol = o.tolerance();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d.n; ++i) names.push_back("u" + std::to_string(i + 1));

  std::vector<std::vector<HierarchyLevel>> fams;
  bool exact_ok = true;
  Json families = Json::array();
  for (std::size_t p = 0; p < d.n; ++p) {
    fams.push_back(build_family(d, p, o.levels));
    const auto rep = verify_recursion(d, fams.back());
    exact_ok = exact_ok && rep.ok;
    Json levels = Json::array();
    for (const auto& lv : fams.back())
      levels.push_back({{"alpha", lv.alpha}, {"density", density_json(lv.density)}, {"text", lv.density.to_string(names)}});
    Json fj{{"p", p + 1}, {"levels", levels}, {"recursionVerified", rep.ok}, {"checkedCoefficients", rep.checked}};
    if (!rep.ok) {
      const auto& w = rep.failures.front();
      fj["witness"] = {{"alpha", w.alpha}, {"i", w.i}, {"j", w.j}, {"monomial", w.monomial},
                       {"expected", to_string(w.expected)}, {"actual", to_string(w.actual)}, {"kind", w.kind}};
    }
    families.push_back(fj);
    out.text.push_back("family p = " + std::to_string(p + 1) + ": recursion " + (rep.ok ? "verified" : "FAILED"));
    for (const auto& lv : fams.back())
      out.text.push_back("  h[" + std::to_string(p + 1) + "," + std::to_string(lv.alpha) + "] = " +
                         lv.density.to_string(names));
  }

  Rng rng(o.seed);
  const NonlocalOperator q(d.frobenius());
  LoopOptions lo;
  lo.box = 0.5;
  lo.spread = 0.4;
  const std::size_t loops = o.points.value_or(5);
  double local = 0, lm = 0, inv = 0;
  Json lm_rows = Json::array();
  for (std::size_t k = 0; k < loops; ++k) {
    const LoopGrid loop(random_loop(d.frobenius(), rng, lo), o.grid);
    for (std::size_t p = 0; p < d.n; ++p) {
      const auto& fam = fams[p];
      for (std::size_t a = 0; a + 1 < fam.size(); ++a)
        local = std::max(local, local_identity_residual(d, fam[a], fam[a + 1], loop));
      for (std::size_t a = 1; a + 1 < fam.size(); ++a) {
        const double r = lenard_magri_residual(d, q, fam[a + 1], fam[a - 1], fam[a], loop);
        lm = std::max(lm, r);
        lm_rows.push_back({{"loop", k}, {"p", p + 1}, {"alpha", fam[a].alpha},
                           {"chain", fam[a + 1].alpha % 2 == 0 ? "even" : "odd"}, {"residual", r}});
      }
    }
    for (const auto& fa : fams)
      for (const auto& fb : fams)
        for (const auto& la : fa)
          for (const auto& lb : fb) inv = std::max(inv, involutivity_residual(d, la.density, lb.density, loop));
  }
  const bool ok = exact_ok && local < std::min(tol, 1e-9) && lm < tol && inv < tol;
  out.report["builtin"] = name;
  out.report["levels"] = o.levels;
  out.report["grid"] = o.grid;
  out.report["tolerance"] = tol;
  out.report["families"] = families;
  out.report["maxLocalIdentityResidual"] = local;
  out.report["maxLenardMagriResidual"] = lm;
  out.report["maxInvolutivityResidual"] = inv;
  out.report["lenardMagri"] = lm_rows;
  out.report["ok"] = ok;
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << loops << " loops at N = " << o.grid << ": local identity " << local << ", Lenard-Magri " << lm
    << ", involutivity " << inv;
  out.text.push_back(s.str());
  out.code = ok ? kOk : kCheckFailed;
  return out;
}

Outcome cmd_list_builtin(const Options&) {
  Outcome out;
  Json systems = Json::array();
  for (const auto& b : list_builtins()) {
    Json deg = Json::array();
    for (const auto& d : b.degenerations) deg.push_back({{"parameter", d.parameter}, {"value", d.value}, {"note", d.note}});
    systems.push_back({{"name", b.name}, {"description", b.description}, {"dimension", b.system.dimension},
                       {"parameters", b.system.parameters}, {"degenerations", deg}});
    std::string line = "  " + b.name + ": " + b.description;
    for (const auto& d : b.degenerations) line += " [path " + d.parameter + " = " + d.value + "]";
    out.text.push_back(line);
  }
  out.text.insert(out.text.begin(), "covector systems:");
  out.text.push_back("polynomial structures:");
  Json polys = Json::array();
  for (const auto& n : poly_frobenius_names()) {
    const auto d = builtin_poly_frobenius(n);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d.n; ++i) names.push_back("u" + std::to_string(i + 1));
    polys.push_back({{"name", n}, {"dimension", d.n}, {"potential", d.potential.to_string(names)}});
    out.text.push_back("  " + n + ": F = " + d.potential.to_string(names));
  }
  out.report["systems"] = systems;
  out.report["polynomial"] = polys;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for vee-systems, Kohno connections and their Hamiltonian structures"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "covector system JSON file");
    sub->add_option("--builtin", o.builtin, "builtin name (see list-builtin)");
    sub->add_option("--param", o.params, "parameter binding name=value")->take_all();
    sub->add_option("--path", o.path, "degeneration path name=value (value may use eps)");
    sub->add_option("--at", o.at, "binding of the remaining parameters, name=value")->take_all();
    sub->add_option("--points", o.points, "number of sample points or loops");
    sub->add_option("--grid", o.grid, "loop grid size (power of two)");
    sub->add_option("--levels", o.levels, "highest hierarchy level");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "numeric residual tolerance");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  using Handler = Outcome (*)(const Options&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"validate", "report collinear pairs, zero directions and rank", cmd_validate},
      {"check-vee", "decide the vee-conditions plane by plane", cmd_check_vee},
      {"check-kohno", "decide the Kohno commutator property", cmd_check_kohno},
      {"check-equivalence", "run both checks and compare them", cmd_check_equivalence},
      {"gram", "Gram metric, symbolic when parameters are unbound", cmd_gram},
      {"build-frobenius", "metric and exact point checks of the product", cmd_build_frobenius},
      {"check-wdvv", "associativity at sample points", cmd_check_wdvv},
      {"regularize", "regularized metric along a degeneration path", cmd_regularize},
      {"check-poisson-conditions", "exact Poisson-bivector conditions for the affinors", cmd_check_poisson},
      {"loop-test", "non-local operator on random loops", cmd_loop_test},
      {"hierarchy", "principal hierarchy, recursion and Lenard-Magri residuals", cmd_hierarchy},
      {"list-builtin", "builtin systems and polynomial structures", cmd_list_builtin},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, help, handler] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    subs.emplace_back(sub, handler);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Handler handler = nullptr;
  for (const auto& [sub, h] : subs)
    if (sub->parsed()) handler = h;

  Outcome out;
  try {
    out = handler(o);
  } catch (const SingularMatrixError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (o.json()) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    for (const auto& line : out.text) {
      std::cout << line;
      if (line.empty() || line.back() != '\n') std::cout << "\n";
    }
  }
  return out.code;
}
