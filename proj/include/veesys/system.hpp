#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "veesys/matrix.hpp"
#include "veesys/param_function.hpp"

namespace veesys {

/// Covector alpha = sqrt(radicand) * direction with a parametric radicand.
/// alpha (x) alpha = radicand * direction (x) direction stays rational.
struct ScaledCovector {
  std::string label;
  ParamFunction radicand;
  VectorQ direction;
};

/// A finite family of scaled covectors on an n-dimensional space, possibly
/// depending on named parameters.
struct CovectorSystem {
  std::size_t dimension = 0;
  std::vector<std::string> parameters;
  std::vector<ScaledCovector> covectors;
};

/// Instantiated covector with a nonzero rational radicand (negative radicands
/// stand for imaginary covectors).
struct Covector {
  std::string label;
  Rational radicand;
  VectorQ direction;
};

struct ConcreteSystem {
  std::size_t dimension = 0;
  std::vector<Covector> covectors;

  std::size_t size() const { return covectors.size(); }
};

struct Instantiation {
  ConcreteSystem system;
  std::vector<std::string> dropped;  // labels of covectors whose radicand evaluated to 0
};

/// Evaluates every radicand. Throws InputError on an unbound parameter and
/// ArithmeticError on a radicand pole.
Instantiation instantiate(const CovectorSystem& family, const Bindings& values);

/// Wraps a concrete system as a parameter-free family.
CovectorSystem as_family(const ConcreteSystem& system);

struct ValidationReport {
  std::vector<std::pair<std::size_t, std::size_t>> collinear_pairs;
  std::vector<std::size_t> zero_directions;
  std::vector<std::size_t> wrong_length;
  std::vector<std::size_t> zero_radicands;
  std::size_t rank = 0;
  std::size_t dimension = 0;

  bool spans() const { return rank == dimension; }
  bool ok() const {
    return collinear_pairs.empty() && zero_directions.empty() && wrong_length.empty() &&
           zero_radicands.empty() && spans();
  }
  std::vector<std::string> messages() const;
};

ValidationReport validate(const CovectorSystem& system);
ValidationReport validate(const ConcreteSystem& system);

/// True when the two directions are proportional (both nonzero).
bool collinear(const VectorQ& a, const VectorQ& b);

/// Rewrites (r, v) as (r k^2, w) with v = k w, w integral, gcd 1, and first
/// nonzero entry positive. The covector alpha is unchanged up to sign.
Covector canonical_form(const Covector& c);
ScaledCovector canonical_form(const ScaledCovector& c);

/// Matrix whose rows are the directions.
MatrixQ direction_matrix(const ConcreteSystem& system);

}  // namespace veesys
