#include "veesys/system.hpp"

#include "veesys/error.hpp"

namespace veesys {

Instantiation instantiate(const CovectorSystem& family, const Bindings& values) {
  for (const auto& p : family.parameters)
    if (!values.count(p)) throw InputError("unbound parameter '" + p + "'");
  Instantiation out;
  out.system.dimension = family.dimension;
  for (const auto& c : family.covectors) {
    Rational r;
    try {
      r = c.radicand.evaluate(values);
    } catch (const ArithmeticError&) {
      throw ArithmeticError("radicand of covector '" + c.label + "' has a pole at the given parameters");
    }
    if (r == 0) {
      out.dropped.push_back(c.label);
      continue;
    }
    out.system.covectors.push_back({c.label, r, c.direction});
  }
  return out;
}

CovectorSystem as_family(const ConcreteSystem& system) {
  CovectorSystem out;
  out.dimension = system.dimension;
  for (const auto& c : system.covectors) out.covectors.push_back({c.label, ParamFunction(c.radicand), c.direction});
  return out;
}

bool collinear(const VectorQ& a, const VectorQ& b) {
  if (a.size() != b.size()) return false;
  // Proportional iff every 2x2 minor vanishes.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

namespace {

bool is_zero(const VectorQ& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

ValidationReport validate_directions(std::size_t dimension, const std::vector<const VectorQ*>& dirs) {
  ValidationReport report;
  report.dimension = dimension;
  std::vector<VectorQ> rows;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (dirs[i]->size() != dimension) {
      report.wrong_length.push_back(i);
      continue;
    }
    if (is_zero(*dirs[i])) {
      report.zero_directions.push_back(i);
      continue;
    }
    rows.push_back(*dirs[i]);
  }
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      if (dirs[i]->size() != dimension || dirs[j]->size() != dimension) continue;
      if (is_zero(*dirs[i]) || is_zero(*dirs[j])) continue;
      if (collinear(*dirs[i], *dirs[j])) report.collinear_pairs.emplace_back(i, j);
    }
  report.rank = rows.empty() ? 0 : rank(MatrixQ::from_rows(rows));
  return report;
}

}  // namespace

ValidationReport validate(const CovectorSystem& system) {
  std::vector<const VectorQ*> dirs;
  for (const auto& c : system.covectors) dirs.push_back(&c.direction);
  ValidationReport report = validate_directions(system.dimension, dirs);
  for (std::size_t i = 0; i < system.covectors.size(); ++i)
    if (system.covectors[i].radicand.is_zero()) report.zero_radicands.push_back(i);
  return report;
}

ValidationReport validate(const ConcreteSystem& system) {
  std::vector<const VectorQ*> dirs;
  for (const auto& c : system.covectors) dirs.push_back(&c.direction);
  ValidationReport report = validate_directions(system.dimension, dirs);
  for (std::size_t i = 0; i < system.covectors.size(); ++i)
    if (system.covectors[i].radicand == 0) report.zero_radicands.push_back(i);
  return report;
}

std::vector<std::string> ValidationReport::messages() const {
  std::vector<std::string> out;
  for (auto [i, j] : collinear_pairs)
    out.push_back("covectors " + std::to_string(i) + " and " + std::to_string(j) + " are collinear");
  for (auto i : zero_directions) out.push_back("covector " + std::to_string(i) + " has a zero direction");
  for (auto i : wrong_length)
    out.push_back("covector " + std::to_string(i) + " direction length differs from dimension " +
                  std::to_string(dimension));
  for (auto i : zero_radicands) out.push_back("covector " + std::to_string(i) + " has a zero radicand");
  if (!spans())
    out.push_back("directions span rank " + std::to_string(rank) + " < dimension " + std::to_string(dimension));
  return out;
}

namespace {

// Returns (w, k) with v = k w as in canonical_form.
std::pair<VectorQ, Rational> primitive_direction(const VectorQ& v) {
  Integer den_lcm = 1;
  for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& x : v) {
    const Integer scaled = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  if (num_gcd == 0) return {v, Rational(1)};
  Rational k(num_gcd, den_lcm);
  k.canonicalize();
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0) k = -k;
      break;
    }
  VectorQ w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / k;
  return {w, k};
}

}  // namespace

Covector canonical_form(const Covector& c) {
  auto [w, k] = primitive_direction(c.direction);
  return {c.label, Rational(c.radicand * k * k), w};
}

ScaledCovector canonical_form(const ScaledCovector& c) {
  auto [w, k] = primitive_direction(c.direction);
  return {c.label, c.radicand * ParamFunction(Rational(k * k)), w};
}

MatrixQ direction_matrix(const ConcreteSystem& system) {
  MatrixQ m(system.size(), system.dimension);
  for (std::size_t i = 0; i < system.size(); ++i)
    for (std::size_t j = 0; j < system.dimension; ++j) m(i, j) = system.covectors[i].direction[j];
  return m;
}

}  // namespace veesys
