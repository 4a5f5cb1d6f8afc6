#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veesys/rational.hpp"

namespace veesys {

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are keyed by exponent vectors in lexicographic order (variable 0 most
/// significant); zero coefficients are never stored.
class MPoly {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const Rational& c);
  static MPoly variable(std::size_t nvars, std::size_t index);
  static MPoly term(const Rational& coefficient, Exponents exponents);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of the zero exponent vector).
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  /// Smallest exponent of `var` over all terms; 0 for the zero polynomial.
  unsigned min_degree_in(std::size_t var) const;

  void add_term(const Exponents& e, const Rational& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  MPoly operator-() const;
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MPoly pow(unsigned k) const;
  MPoly derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Terms carrying var^power, with that exponent reset to zero.
  MPoly coefficient_in(std::size_t var, unsigned power) const;

  /// Exact quotient when `divisor` divides this polynomial, otherwise nullopt.
  std::optional<MPoly> divide_exact(const MPoly& divisor) const;

  /// Leading coefficient in lexicographic order; 0 for the zero polynomial.
  Rational leading_coefficient() const;

  /// Re-embeds into `new_nvars` variables; old variable i becomes mapping[i].
  MPoly remap(std::size_t new_nvars, std::span<const std::size_t> mapping) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace veesys
