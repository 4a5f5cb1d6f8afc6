#include "veesys/param_function.hpp"

#include <algorithm>

#include "veesys/error.hpp"

namespace veesys {

ParamFunction::ParamFunction(const Rational& c)
    : num_(MPoly::constant(0, c)), den_(MPoly::constant(0, Rational(1))) {}

ParamFunction::ParamFunction(std::vector<std::string> vars, MPoly num, MPoly den)
    : vars_(std::move(vars)), num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != vars_.size() || den_.nvars() != vars_.size())
    throw InputError("parameter function variable count mismatch");
  if (den_.is_zero()) throw ArithmeticError("parameter function with zero denominator");
  normalize();
}

ParamFunction ParamFunction::variable(const std::string& name) {
  return ParamFunction({name}, MPoly::variable(1, 0), MPoly::constant(1, Rational(1)));
}

ParamFunction ParamFunction::from_univariate(const UniRationalFunction& f, const std::string& var) {
  auto lift = [](const UniPoly& p) {
    MPoly out(1);
    for (int k = 0; k <= p.degree(); ++k) out.add_term({static_cast<unsigned>(k)}, p.coefficient(k));
    return out;
  };
  return ParamFunction({var}, lift(f.numerator()), lift(f.denominator()));
}

Rational ParamFunction::constant_value() const {
  if (!vars_.empty()) throw InputError("unbound parameter '" + vars_.front() + "'");
  return num_.constant_term() / den_.constant_term();
}

void ParamFunction::normalize() {
  if (num_.is_zero()) {
    vars_.clear();
    num_ = MPoly(0);
    den_ = MPoly::constant(0, Rational(1));
    return;
  }
  // Cancel the common monomial factor.
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    const unsigned common = std::min(num_.min_degree_in(v), den_.min_degree_in(v));
    if (common == 0) continue;
    MPoly::Exponents e(vars_.size(), 0);
    e[v] = common;
    const MPoly mono = MPoly::term(Rational(1), e);
    num_ = *num_.divide_exact(mono);
    den_ = *den_.divide_exact(mono);
  }
  if (!den_.is_constant()) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = MPoly::constant(vars_.size(), Rational(1));
    } else if (vars_.size() == 1) {
      const UniRationalFunction reduced = to_univariate();
      auto lift = [](const UniPoly& q) {
        MPoly out(1);
        for (int k = 0; k <= q.degree(); ++k) out.add_term({static_cast<unsigned>(k)}, q.coefficient(k));
        return out;
      };
      num_ = lift(reduced.numerator());
      den_ = lift(reduced.denominator());
    }
  }
  const Rational lead = den_.leading_coefficient();
  if (lead != 1) {
    num_ *= Rational(1 / lead);
    den_ *= Rational(1 / lead);
  }
  // Drop variables that no longer occur.
  std::vector<bool> used(vars_.size(), false);
  for (const auto* p : {&num_, &den_})
    for (const auto& [e, c] : p->terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> kept;
  std::vector<std::size_t> mapping(vars_.size(), vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!used[i]) continue;
    mapping[i] = kept.size();
    kept.push_back(vars_[i]);
  }
  num_ = num_.remap(kept.size(), mapping);
  den_ = den_.remap(kept.size(), mapping);
  vars_ = std::move(kept);
}

ParamFunction ParamFunction::over(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> mapping(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    mapping[i] = static_cast<std::size_t>(it - vars.begin());
  }
  ParamFunction out;
  out.vars_ = vars;
  out.num_ = num_.remap(vars.size(), mapping);
  out.den_ = den_.remap(vars.size(), mapping);
  return out;
}

void ParamFunction::unify(ParamFunction& a, ParamFunction& b) {
  if (a.vars_ == b.vars_) return;
  std::vector<std::string> all = a.vars_;
  for (const auto& v : b.vars_)
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  a = a.over(all);
  b = b.over(all);
}

ParamFunction& ParamFunction::operator+=(const ParamFunction& o) {
  ParamFunction rhs = o;
  unify(*this, rhs);
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

ParamFunction& ParamFunction::operator-=(const ParamFunction& o) { return *this += -o; }

ParamFunction& ParamFunction::operator*=(const ParamFunction& o) {
  ParamFunction rhs = o;
  unify(*this, rhs);
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

ParamFunction& ParamFunction::operator/=(const ParamFunction& o) {
  if (o.is_zero()) throw ArithmeticError("division by the zero function");
  ParamFunction rhs = o;
  unify(*this, rhs);
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

ParamFunction ParamFunction::operator-() const {
  ParamFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

ParamFunction ParamFunction::pow(unsigned k) const {
  ParamFunction out(Rational(1));
  for (unsigned i = 0; i < k; ++i) out *= *this;
  return out;
}

bool operator==(const ParamFunction& a, const ParamFunction& b) {
  ParamFunction x = a, y = b;
  ParamFunction::unify(x, y);
  return x.num_ * y.den_ == y.num_ * x.den_;
}

namespace {

// Evaluates a polynomial after replacing each variable by a parameter function.
ParamFunction compose(const MPoly& p, const std::vector<ParamFunction>& images) {
  ParamFunction acc(Rational(0));
  for (const auto& [e, c] : p.terms()) {
    ParamFunction term(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= images[i].pow(e[i]);
    acc += term;
  }
  return acc;
}

}  // namespace

ParamFunction ParamFunction::bind(const Bindings& values) const {
  std::vector<ParamFunction> images;
  images.reserve(vars_.size());
  for (const auto& v : vars_) {
    auto it = values.find(v);
    images.push_back(it == values.end() ? variable(v) : ParamFunction(it->second));
  }
  const ParamFunction den = compose(den_, images);
  if (den.is_zero()) throw ArithmeticError("pole: denominator vanishes at the given parameter values");
  return compose(num_, images) / den;
}

Rational ParamFunction::evaluate(const Bindings& values) const {
  for (const auto& v : vars_)
    if (!values.count(v)) throw InputError("unbound parameter '" + v + "'");
  return bind(values).constant_value();
}

ParamFunction ParamFunction::substitute(const std::string& name, const ParamFunction& value) const {
  std::vector<ParamFunction> images;
  images.reserve(vars_.size());
  for (const auto& v : vars_) images.push_back(v == name ? value : variable(v));
  const ParamFunction den = compose(den_, images);
  if (den.is_zero()) throw ArithmeticError("pole: denominator vanishes after substitution");
  return compose(num_, images) / den;
}

UniRationalFunction ParamFunction::to_univariate(std::string* var) const {
  if (vars_.size() > 1) throw InputError("function depends on more than one parameter");
  auto flatten = [](const MPoly& p) {
    std::vector<Rational> c;
    for (const auto& [e, coef] : p.terms()) {
      const std::size_t k = e.empty() ? 0 : e[0];
      if (c.size() <= k) c.resize(k + 1);
      c[k] += coef;
    }
    return UniPoly(std::move(c));
  };
  if (var && !vars_.empty()) *var = vars_.front();
  return UniRationalFunction(flatten(num_), flatten(den_));
}

ParamFunction::LeadingTerm ParamFunction::leading_term_at_zero(const std::string& var) const {
  if (is_zero()) throw ArithmeticError("leading term of the zero function is undefined");
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return {0, *this};
  const std::size_t v = static_cast<std::size_t>(it - vars_.begin());
  const unsigned num_low = num_.min_degree_in(v);
  const unsigned den_low = den_.min_degree_in(v);
  ParamFunction coefficient(vars_, num_.coefficient_in(v, num_low), den_.coefficient_in(v, den_low));
  return {static_cast<int>(num_low) - static_cast<int>(den_low), coefficient};
}

std::string ParamFunction::to_string() const {
  const std::string num = num_.to_string(vars_);
  if (den_.is_constant()) return num;
  const bool bare_num = num_.size() == 1 && num.find(' ') == std::string::npos &&
                        num.front() != '-' && num.find('/') == std::string::npos;
  return (bare_num ? num : "(" + num + ")") + "/(" + den_.to_string(vars_) + ")";
}

}  // namespace veesys
