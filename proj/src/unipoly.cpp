#include "veesys/unipoly.hpp"

#include <sstream>

#include "veesys/error.hpp"

namespace veesys {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly::UniPoly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

UniPoly UniPoly::monomial(const Rational& coefficient, int degree) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coefficient;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::linear_root(const Rational& root) {
  return UniPoly(std::vector<Rational>{-root, Rational(1)});
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational UniPoly::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly out = *this;
  const Rational lead = leading();
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw ArithmeticError("polynomial division by zero");
  UniPoly rem = *this;
  if (rem.degree() < divisor.degree()) return {UniPoly(), rem};
  std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - divisor.degree()) + 1);
  const Rational lead = divisor.leading();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    const int shift = rem.degree() - divisor.degree();
    const Rational factor = rem.leading() / lead;
    q[static_cast<std::size_t>(shift)] = factor;
    for (int k = 0; k <= divisor.degree(); ++k)
      rem.coeffs_[static_cast<std::size_t>(k + shift)] -= factor * divisor.coeffs_[static_cast<std::size_t>(k)];
    rem.trim();
  }
  return {UniPoly(std::move(q)), rem};
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    if (k == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniRationalFunction::UniRationalFunction(UniPoly num, UniPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
  canonicalize();
}

void UniRationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = UniPoly(Rational(1));
    return;
  }
  const UniPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    num_ *= UniPoly(Rational(1) / lead);
    den_ *= UniPoly(Rational(1) / lead);
  }
}

Rational UniRationalFunction::evaluate(const Rational& x) const {
  const Rational d = den_.evaluate(x);
  if (d == 0) throw ArithmeticError("rational function has a pole at " + x.get_str());
  return num_.evaluate(x) / d;
}

UniRationalFunction& UniRationalFunction::operator+=(const UniRationalFunction& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

UniRationalFunction& UniRationalFunction::operator-=(const UniRationalFunction& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

UniRationalFunction& UniRationalFunction::operator*=(const UniRationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

UniRationalFunction& UniRationalFunction::operator/=(const UniRationalFunction& o) {
  if (o.is_zero()) throw ArithmeticError("division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

std::string UniRationalFunction::to_string(const std::string& var) const {
  if (den_.degree() == 0) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

namespace {

// Multiplicity of x0 as a root of p, and p divided by (x - x0)^multiplicity.
std::pair<int, UniPoly> strip_root(UniPoly p, const Rational& x0) {
  const UniPoly factor = UniPoly::linear_root(x0);
  int order = 0;
  while (p.evaluate(x0) == 0) {
    p = p.divmod(factor).first;
    ++order;
  }
  return {order, p};
}

}  // namespace

Valuation valuation_at(const UniRationalFunction& f, const Rational& x0) {
  if (f.is_zero()) throw ArithmeticError("valuation of the zero function is undefined");
  auto [num_order, num_rest] = strip_root(f.numerator(), x0);
  auto [den_order, den_rest] = strip_root(f.denominator(), x0);
  return {num_order - den_order, num_rest.evaluate(x0) / den_rest.evaluate(x0)};
}

}  // namespace veesys
