#pragma once

#include <map>
#include <string>
#include <vector>

#include "veesys/mpoly.hpp"
#include "veesys/rational.hpp"
#include "veesys/unipoly.hpp"

namespace veesys {

using Bindings = std::map<std::string, Rational>;

/// Rational function of named parameters (radicands of parametric families,
/// symbolic Gram entries). Numerator and denominator are sparse polynomials
/// over the variable list `vars()`, which only ever contains variables that
/// actually occur.
///
/// Normal form: the denominator has leading coefficient 1, common monomial
/// factors are cancelled, an exactly dividing denominator is divided out, and in
/// the univariate case the gcd is removed. Multivariate gcds are not computed,
/// so equality is decided by cross-multiplication rather than structurally.
class ParamFunction {
 public:
  ParamFunction() : num_(0), den_(MPoly::constant(0, Rational(1))) {}
  ParamFunction(const Rational& c);  // NOLINT: constants promote implicitly
  ParamFunction(std::vector<std::string> vars, MPoly num, MPoly den);

  static ParamFunction variable(const std::string& name);
  static ParamFunction from_univariate(const UniRationalFunction& f, const std::string& var);

  const std::vector<std::string>& vars() const { return vars_; }
  const MPoly& numerator() const { return num_; }
  const MPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return vars_.empty(); }
  /// Value of a constant function; throws InputError if parameters remain.
  Rational constant_value() const;

  /// Substitutes values for the bound parameters; unbound ones stay symbolic.
  /// Throws ArithmeticError if the substituted denominator vanishes.
  ParamFunction bind(const Bindings& values) const;
  /// Full evaluation; throws InputError naming an unbound parameter.
  Rational evaluate(const Bindings& values) const;
  /// Replaces parameter `name` by `value` (which may involve other parameters).
  ParamFunction substitute(const std::string& name, const ParamFunction& value) const;

  /// Requires at most one parameter; `var` receives its name (unchanged if none).
  UniRationalFunction to_univariate(std::string* var = nullptr) const;

  /// Lowest-order behaviour at var = 0: f = var^order * (coefficient + O(var)),
  /// where coefficient is a function of the remaining parameters.
  struct LeadingTerm;
  /// Throws ArithmeticError on the zero function.
  LeadingTerm leading_term_at_zero(const std::string& var) const;

  ParamFunction& operator+=(const ParamFunction& o);
  ParamFunction& operator-=(const ParamFunction& o);
  ParamFunction& operator*=(const ParamFunction& o);
  ParamFunction& operator/=(const ParamFunction& o);
  friend ParamFunction operator+(ParamFunction a, const ParamFunction& b) { return a += b; }
  friend ParamFunction operator-(ParamFunction a, const ParamFunction& b) { return a -= b; }
  friend ParamFunction operator*(ParamFunction a, const ParamFunction& b) { return a *= b; }
  friend ParamFunction operator/(ParamFunction a, const ParamFunction& b) { return a /= b; }
  ParamFunction operator-() const;
  ParamFunction pow(unsigned k) const;

  /// Mathematical equality (cross-multiplication).
  friend bool operator==(const ParamFunction& a, const ParamFunction& b);

  /// Text accepted back by parse_scalar.
  std::string to_string() const;

 private:
  // Rewrites both operands over the union of their variables.
  static void unify(ParamFunction& a, ParamFunction& b);
  ParamFunction over(const std::vector<std::string>& vars) const;
  void normalize();

  std::vector<std::string> vars_;
  MPoly num_;
  MPoly den_;
};

struct ParamFunction::LeadingTerm {
  int order = 0;
  ParamFunction coefficient;
};

}  // namespace veesys
