#pragma once

#include <string>
#include <utility>
#include <vector>

#include "veesys/rational.hpp"

namespace veesys {

/// Dense univariate polynomial over Q; coefficients stored lowest degree first,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);
  UniPoly(const Rational& constant);  // NOLINT: implicit promotion is intended

  static UniPoly monomial(const Rational& coefficient, int degree);
  /// The linear polynomial x - root.
  static UniPoly linear_root(const Rational& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int k) const;
  Rational leading() const;

  Rational evaluate(const Rational& x) const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& other);
  UniPoly& operator-=(const UniPoly& other);
  UniPoly& operator*=(const UniPoly& other);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  UniPoly operator-() const;
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Quotient and remainder; throws ArithmeticError on a zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);

/// Reduced quotient of univariate polynomials: gcd(num, den) = 1, den monic.
class UniRationalFunction {
 public:
  UniRationalFunction() : den_(Rational(1)) {}
  UniRationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT
  UniRationalFunction(UniPoly num, UniPoly den);

  const UniPoly& numerator() const { return num_; }
  const UniPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Throws ArithmeticError at a pole.
  Rational evaluate(const Rational& x) const;

  UniRationalFunction& operator+=(const UniRationalFunction& o);
  UniRationalFunction& operator-=(const UniRationalFunction& o);
  UniRationalFunction& operator*=(const UniRationalFunction& o);
  UniRationalFunction& operator/=(const UniRationalFunction& o);
  friend UniRationalFunction operator+(UniRationalFunction a, const UniRationalFunction& b) {
    return a += b;
  }
  friend UniRationalFunction operator-(UniRationalFunction a, const UniRationalFunction& b) {
    return a -= b;
  }
  friend UniRationalFunction operator*(UniRationalFunction a, const UniRationalFunction& b) {
    return a *= b;
  }
  friend UniRationalFunction operator/(UniRationalFunction a, const UniRationalFunction& b) {
    return a /= b;
  }
  friend bool operator==(const UniRationalFunction&, const UniRationalFunction&) = default;

  std::string to_string(const std::string& var) const;

 private:
  void canonicalize();
  UniPoly num_;
  UniPoly den_;
};

struct Valuation {
  int order = 0;                 // negative at poles
  Rational leading_coefficient;  // value of (x - x0)^(-order) * f at x0
};

/// Order of vanishing of f at x0 together with the leading coefficient.
/// Throws ArithmeticError when f is identically zero.
Valuation valuation_at(const UniRationalFunction& f, const Rational& x0);

}  // namespace veesys
