#include "veesys/frobenius.hpp"

#include "veesys/error.hpp"

namespace veesys {

namespace {

// acc += a * b, skipping zero factors.
inline void addmul(Rational& acc, const Rational& a, const Rational& b, Rational& tmp) {
  if (sgn(a) == 0 || sgn(b) == 0) return;
  mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
}

}  // namespace

void FrobeniusData::set_metric(const MatrixQ& eta) {
  if (!eta.is_square() || eta.rows() != n_) throw InputError("metric has the wrong shape");
  if (!eta.is_symmetric()) throw InputError("metric is not symmetric");
  eta_ = eta;
  eta_inv_ = matrix_inverse(eta);
}

void FrobeniusData::set_pairing(const MatrixQ& p) {
  pairing_ = p;
  const MatrixQ pinv = matrix_inverse(p);
  cores_.clear();
  for (const auto& c : covectors_->covectors) cores_.push_back(pinv * c.direction);
}

FrobeniusData FrobeniusData::from_system(const ConcreteSystem& system) {
  const GramMetric g = gram_metric(system);
  g.inv();
  FrobeniusData d;
  d.n_ = system.dimension;
  d.covectors_ = system;
  d.set_metric(g.matrix);
  d.set_pairing(g.matrix);
  return d;
}

FrobeniusData FrobeniusData::from_regularized(const MatrixQ& eta, const ConcreteSystem& survivors,
                                              std::vector<std::string> dropped) {
  FrobeniusData d;
  d.n_ = survivors.dimension;
  d.covectors_ = survivors;
  d.set_metric(eta);
  d.set_pairing(eta);
  d.dropped_ = std::move(dropped);
  d.regularized_ = true;
  return d;
}

FrobeniusData FrobeniusData::from_potential(const MatrixQ& eta, const MPoly& potential) {
  FrobeniusData d;
  d.n_ = potential.nvars();
  d.set_metric(eta);
  d.pairing_ = eta;
  d.potential_ = potential;
  const std::size_t n = d.n_;
  d.d3f_.assign(n * n * n, MPoly(n));
  d.d4f_.assign(n * n * n * n, MPoly(n));
  for (std::size_t i = 0; i < n; ++i) {
    const MPoly fi = potential.derivative(i);
    for (std::size_t j = 0; j < n; ++j) {
      const MPoly fij = fi.derivative(j);
      for (std::size_t k = 0; k < n; ++k) {
        const MPoly fijk = fij.derivative(k);
        for (std::size_t m = 0; m < n; ++m) d.d4f_[((m * n + i) * n + j) * n + k] = fijk.derivative(m);
        d.d3f_[(i * n + j) * n + k] = fijk;
      }
    }
  }
  return d;
}

FrobeniusData FrobeniusData::with_metric(const MatrixQ& eta) const {
  FrobeniusData d = *this;
  d.set_metric(eta);
  return d;
}

const ConcreteSystem& FrobeniusData::covectors() const {
  if (!covectors_) throw InputError("Frobenius data has no covector source");
  return *covectors_;
}

bool FrobeniusData::admissible(const VectorQ& u) const {
  if (u.size() != n_) return false;
  if (!covectors_) return true;
  for (const auto& c : covectors_->covectors)
    if (dot(c.direction, u) == 0) return false;
  return true;
}

void FrobeniusData::require_admissible(const VectorQ& u) const {
  if (u.size() != n_)
    throw InputError("point has " + std::to_string(u.size()) + " coordinates, expected " + std::to_string(n_));
  if (!covectors_) return;
  for (std::size_t a = 0; a < covectors_->size(); ++a)
    if (dot(covectors_->covectors[a].direction, u) == 0)
      throw HyperplaneError(a, covectors_->covectors[a].label);
}

Tensor3 structure_constants_at(const FrobeniusData& data, const VectorQ& u) {
  data.require_admissible(u);
  const std::size_t n = data.dimension();
  Tensor3 c(n);
  Rational tmp, coef, vjk;
  if (data.has_covectors()) {
    const auto& cv = data.covectors().covectors;
    for (std::size_t a = 0; a < cv.size(); ++a) {
      const auto& v = cv[a].direction;
      const auto& w = data.cores()[a];
      coef = cv[a].radicand / dot(v, u);
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(v[j]) == 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (sgn(v[k]) == 0) continue;
          vjk = coef * v[j] * v[k];
          for (std::size_t i = 0; i < n; ++i) addmul(c(i, j, k), vjk, w[i], tmp);
        }
      }
    }
    return c;
  }
  const Tensor3 d3 = third_deriv_potential_at(data, u);
  const MatrixQ& g = data.metric_inverse();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) addmul(c(i, j, k), g(i, l), d3(l, j, k), tmp);
  return c;
}

Tensor3 third_deriv_potential_at(const FrobeniusData& data, const VectorQ& u) {
  data.require_admissible(u);
  const std::size_t n = data.dimension();
  Tensor3 f(n);
  if (data.has_covectors()) {
    Rational coef, tmp, vij;
    for (const auto& c : data.covectors().covectors) {
      const auto& v = c.direction;
      coef = c.radicand / dot(v, u);
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(v[j]) == 0) continue;
          vij = coef * v[i] * v[j];
          for (std::size_t k = 0; k < n; ++k) addmul(f(i, j, k), vij, v[k], tmp);
        }
      }
    }
    return f;
  }
  const auto& d3 = data.third_derivatives();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) f(i, j, k) = d3[(i * n + j) * n + k].evaluate(std::span<const Rational>(u));
  return f;
}

Tensor4 d_structure_constants_at(const FrobeniusData& data, const VectorQ& u) {
  data.require_admissible(u);
  const std::size_t n = data.dimension();
  Tensor4 dc(n);
  Rational tmp, coef, vmj, vmjk;
  if (data.has_covectors()) {
    const auto& cv = data.covectors().covectors;
    for (std::size_t a = 0; a < cv.size(); ++a) {
      const auto& v = cv[a].direction;
      const auto& w = data.cores()[a];
      const Rational vu = dot(v, u);
      coef = -cv[a].radicand / (vu * vu);
      for (std::size_t m = 0; m < n; ++m) {
        if (sgn(v[m]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(v[j]) == 0) continue;
          vmj = coef * v[m] * v[j];
          for (std::size_t k = 0; k < n; ++k) {
            if (sgn(v[k]) == 0) continue;
            vmjk = vmj * v[k];
            for (std::size_t i = 0; i < n; ++i) addmul(dc(m, i, j, k), vmjk, w[i], tmp);
          }
        }
      }
    }
    return dc;
  }
  const auto& d4 = data.fourth_derivatives();
  const MatrixQ& g = data.metric_inverse();
  std::vector<Rational> f4(n * n * n * n);
  for (std::size_t q = 0; q < f4.size(); ++q) f4[q] = d4[q].evaluate(std::span<const Rational>(u));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) addmul(dc(m, i, j, k), g(i, l), f4[((m * n + l) * n + j) * n + k], tmp);
  return dc;
}

std::vector<double> structure_constants_double(const FrobeniusData& data, std::span<const double> u) {
  const std::size_t n = data.dimension();
  std::vector<double> c(n * n * n, 0.0);
  if (data.has_covectors()) {
    const auto& cv = data.covectors().covectors;
    for (std::size_t a = 0; a < cv.size(); ++a) {
      const auto& v = cv[a].direction;
      const auto& w = data.cores()[a];
      double vu = 0;
      for (std::size_t i = 0; i < n; ++i) vu += v[i].get_d() * u[i];
      const double coef = cv[a].radicand.get_d() / vu;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const double s = coef * v[j].get_d() * v[k].get_d();
          if (s == 0) continue;
          for (std::size_t i = 0; i < n; ++i) c[(i * n + j) * n + k] += s * w[i].get_d();
        }
    }
    return c;
  }
  const auto& d3 = data.third_derivatives();
  std::vector<double> f(n * n * n);
  for (std::size_t q = 0; q < f.size(); ++q) f[q] = d3[q].evaluate(u);
  const MatrixQ& g = data.metric_inverse();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const double gil = g(i, l).get_d();
      if (gil == 0) continue;
      for (std::size_t jk = 0; jk < n * n; ++jk) c[i * n * n + jk] += gil * f[l * n * n + jk];
    }
  return c;
}

bool potentiality_holds(const MatrixQ& eta, const Tensor3& c, const Tensor3& d3f) {
  const std::size_t n = c.dim();
  Rational acc, tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        acc = 0;
        for (std::size_t l = 0; l < n; ++l) addmul(acc, eta(i, l), c(l, j, k), tmp);
        if (acc != d3f(i, j, k)) return false;
      }
  return true;
}

bool associativity_holds(const Tensor3& c) {
  const std::size_t n = c.dim();
  // (C_a C_b)^i_j = c^i_{a m} c^m_{b j}
  Rational x, y, tmp;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          x = 0;
          y = 0;
          for (std::size_t m = 0; m < n; ++m) {
            addmul(x, c(i, a, m), c(m, b, j), tmp);
            addmul(y, c(i, b, m), c(m, a, j), tmp);
          }
          if (x != y) return false;
        }
  return true;
}

bool invariance_holds(const MatrixQ& g, const Tensor3& c) {
  const std::size_t n = c.dim();
  Rational x, y, tmp;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t j = l + 1; j < n; ++j) {
        x = 0;
        y = 0;
        for (std::size_t m = 0; m < n; ++m) {
          addmul(x, g(l, m), c(j, h, m), tmp);
          addmul(y, g(j, m), c(l, h, m), tmp);
        }
        if (x != y) return false;
      }
  return true;
}

bool nabla_c_symmetry_holds(const Tensor4& dc) {
  const std::size_t n = dc.dim();
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = m + 1; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          if (dc(m, i, j, l) != dc(j, i, m, l)) return false;
  return true;
}

bool hertling_manin_holds(const Tensor3& c, const Tensor4& dc) {
  const std::size_t n = c.dim();
  Rational acc, neg, tmp;
  // The expression is symmetric in (q, s) and in (t, l).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t l = t; l < n; ++l)
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t s = q; s < n; ++s) {
            acc = 0;
            neg = 0;
            for (std::size_t m = 0; m < n; ++m) {
              addmul(acc, c(m, t, l), dc(m, k, q, s), tmp);
              addmul(neg, dc(m, k, t, l), c(m, q, s), tmp);
              addmul(acc, dc(q, m, t, l), c(k, m, s), tmp);
              addmul(acc, dc(s, m, t, l), c(k, m, q), tmp);
              addmul(neg, dc(l, m, q, s), c(k, t, m), tmp);
              addmul(neg, dc(t, m, q, s), c(k, l, m), tmp);
            }
            if (acc != neg) return false;
          }
  return true;
}

bool check_potentiality_at(const FrobeniusData& data, const VectorQ& u) {
  return potentiality_holds(data.metric(), structure_constants_at(data, u), third_deriv_potential_at(data, u));
}

bool check_associativity_at(const FrobeniusData& data, const VectorQ& u) {
  return associativity_holds(structure_constants_at(data, u));
}

bool check_invariance_at(const FrobeniusData& data, const VectorQ& u) {
  return invariance_holds(data.metric_inverse(), structure_constants_at(data, u));
}

bool check_nabla_c_symmetry_at(const FrobeniusData& data, const VectorQ& u) {
  return nabla_c_symmetry_holds(d_structure_constants_at(data, u));
}

bool check_hertling_manin_at(const FrobeniusData& data, const VectorQ& u) {
  return hertling_manin_holds(structure_constants_at(data, u), d_structure_constants_at(data, u));
}

bool check_unity_at(const FrobeniusData& data, const VectorQ& u, const Rational& mu) {
  if (mu == 0) throw InputError("unity scale mu = 0: the product has no unity");
  const Tensor3 c = structure_constants_at(data, u);
  const std::size_t n = data.dimension();
  Rational acc, tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < n; ++k) addmul(acc, c(i, j, k), u[k], tmp);
      if (acc != (i == j ? mu : Rational(0))) return false;
    }
  return true;
}

MatrixQ endomorphism_sum(const FrobeniusData& data) {
  const std::size_t n = data.dimension();
  MatrixQ sum(n, n);
  const auto& cv = data.covectors().covectors;
  for (std::size_t a = 0; a < cv.size(); ++a) sum += MatrixQ::outer(data.cores()[a], cv[a].direction) * cv[a].radicand;
  return sum;
}

std::optional<Rational> unity_scale(const FrobeniusData& data) {
  const MatrixQ sum = endomorphism_sum(data);
  const Rational mu = sum.rows() ? sum(0, 0) : Rational(0);
  if (sum != MatrixQ::identity(sum.rows()) * mu) return std::nullopt;
  return mu;
}

VectorQ sample_admissible_point(const FrobeniusData& data, Rng& rng) {
  const std::size_t n = data.dimension();
  for (int attempt = 0; attempt < 100; ++attempt) {
    // widen the box on retries; large root systems crowd small integers
    const long range = 9 + 4L * attempt;
    VectorQ u(n);
    for (auto& x : u) x = rng.uniform_int(-range, range);
    if (data.admissible(u)) return u;
  }
  throw InputError("no admissible point found in 100 attempts");
}

namespace {

std::size_t param_rank(ParamMatrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const ParamFunction f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

RegularizedFamily regularize(const CovectorSystem& family, const std::string& parameter,
                             const ParamFunction& value) {
  CovectorSystem along = family;
  along.parameters.clear();
  for (const auto& p : family.parameters)
    if (p != parameter) along.parameters.push_back(p);
  for (auto& c : along.covectors) c.radicand = c.radicand.substitute(parameter, value);

  const ParamMatrix g = symbolic_gram(along);
  const std::size_t n = family.dimension;
  std::optional<int> order;
  std::vector<std::vector<ParamFunction::LeadingTerm>> lead(n, std::vector<ParamFunction::LeadingTerm>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g[i][j].is_zero()) continue;
      lead[i][j] = g[i][j].leading_term_at_zero(kPathVariable);
      if (!order || lead[i][j].order < *order) order = lead[i][j].order;
    }
  if (!order) throw SingularMatrixError(0, "Gram metric vanishes identically along the path");

  RegularizedFamily out;
  out.parameters = along.parameters;
  out.order = *order;
  out.metric.assign(n, std::vector<ParamFunction>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!g[i][j].is_zero() && lead[i][j].order == *order) out.metric[i][j] = lead[i][j].coefficient;

  const std::size_t r = param_rank(out.metric);
  if (*order == 0 && r == n)
    throw InputError("Gram metric is nonsingular at the path's base point; no regularization needed");
  if (r < n) throw SingularMatrixError(r, "limit metric is singular; not regularizable along this path");

  out.survivors.dimension = n;
  out.survivors.parameters = along.parameters;
  for (const auto& c : along.covectors) {
    const auto lt = c.radicand.leading_term_at_zero(kPathVariable);
    if (lt.order > 0) {
      out.dropped.push_back(c.label);
      continue;
    }
    if (lt.order < 0) throw ArithmeticError("radicand of covector '" + c.label + "' has a pole along the path");
    out.survivors.covectors.push_back({c.label, lt.coefficient, c.direction});
  }
  return out;
}

RegularizedFamily regularize(const CovectorSystem& family, const Rational& t0) {
  if (family.parameters.size() != 1) throw InputError("a one-parameter family is required");
  const auto& t = family.parameters.front();
  return regularize(family, t, ParamFunction(t0) + ParamFunction::variable(kPathVariable));
}

FrobeniusData instantiate_regularized(const RegularizedFamily& reg, const Bindings& values) {
  const std::size_t n = reg.metric.size();
  MatrixQ eta(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eta(i, j) = reg.metric[i][j].evaluate(values);
  Instantiation inst = instantiate(reg.survivors, values);
  std::vector<std::string> dropped = reg.dropped;
  dropped.insert(dropped.end(), inst.dropped.begin(), inst.dropped.end());
  return FrobeniusData::from_regularized(eta, inst.system, std::move(dropped));
}

}  // namespace veesys
