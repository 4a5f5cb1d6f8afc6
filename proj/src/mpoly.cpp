#include "veesys/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "veesys/error.hpp"

namespace veesys {

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
  MPoly p(nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.add_term(e, Rational(1));
  return p;
}

MPoly MPoly::term(const Rational& coefficient, Exponents exponents) {
  MPoly p(exponents.size());
  p.add_term(exponents, coefficient);
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rational MPoly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational MPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MPoly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (unsigned x : e) d += static_cast<int>(x);
    deg = std::max(deg, d);
  }
  return deg;
}

int MPoly::degree_in(std::size_t var) const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, static_cast<int>(e[var]));
  return deg;
}

unsigned MPoly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  unsigned lo = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) lo = std::min(lo, e[var]);
  return lo;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw InputError("exponent vector has the wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.nvars_ != nvars_) throw InputError("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.nvars_ != nvars_) throw InputError("polynomial variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.nvars_ != b.nvars_) throw InputError("polynomial variable count mismatch");
  MPoly out(a.nvars_);
  MPoly::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, Rational(ca * cb));
    }
  }
  return out;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly result = constant(nvars_, Rational(1));
  MPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, Rational(c * e[var]));
  }
  return out;
}

Rational MPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw InputError("evaluation point has the wrong dimension");
  Rational acc = 0;
  Rational term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

double MPoly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw InputError("evaluation point has the wrong dimension");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) term *= std::pow(point[i], static_cast<int>(e[i]));
    acc += term;
  }
  return acc;
}

MPoly MPoly::coefficient_in(std::size_t var, unsigned power) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != power) continue;
    Exponents r = e;
    r[var] = 0;
    out.add_term(r, c);
  }
  return out;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
  if (divisor.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (divisor.nvars_ != nvars_) throw InputError("polynomial variable count mismatch");
  MPoly quotient(nvars_);
  MPoly rem = *this;
  const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
  Exponents shift(nvars_);
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (re[i] < lead_e[i]) return std::nullopt;
      shift[i] = re[i] - lead_e[i];
    }
    const MPoly step = term(Rational(rc / lead_c), shift);
    quotient += step;
    rem -= step * divisor;
  }
  return quotient;
}

Rational MPoly::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
}

MPoly MPoly::remap(std::size_t new_nvars, std::span<const std::size_t> mapping) const {
  if (mapping.size() != nvars_) throw InputError("variable mapping has the wrong size");
  MPoly out(new_nvars);
  Exponents e(new_nvars);
  for (const auto& [old_e, c] : terms_) {
    std::fill(e.begin(), e.end(), 0U);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (old_e[i] == 0) continue;
      if (mapping[i] >= new_nvars) throw InputError("variable dropped by remap is still in use");
      e[mapping[i]] += old_e[i];
    }
    out.add_term(e, c);
  }
  return out;
}

std::string MPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, coef] = *it;
    Rational c = coef;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool has_var = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (has_var) mono << "*";
      mono << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) mono << "^" << e[i];
      has_var = true;
    }
    if (!has_var) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << mono.str();
    }
    first = false;
  }
  return os.str();
}

}  // namespace veesys
