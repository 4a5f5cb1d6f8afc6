#include "veesys/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "veesys/error.hpp"

namespace veesys {

namespace {

inline void addmul(Rational& acc, const Rational& a, const Rational& b, Rational& tmp) {
  if (sgn(a) == 0 || sgn(b) == 0) return;
  mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
}

}  // namespace

MatrixQ AffinorSet::metric() const {
  const std::size_t n = affinors.empty() ? 0 : affinors.front().core.size();
  MatrixQ g(n, n);
  for (const auto& a : affinors) g += MatrixQ::outer(a.core, a.core) * a.weight;
  return g;
}

AffinorSet check_vector_affinors(const FrobeniusData& data) {
  AffinorSet set;
  set.origin = "check-vectors";
  const auto& cv = data.covectors().covectors;
  for (std::size_t a = 0; a < cv.size(); ++a) set.affinors.push_back({cv[a].radicand, data.cores()[a]});
  return set;
}

AffinorSet metric_affinors(const FrobeniusData& data) {
  AffinorSet set;
  set.origin = "metric";
  MatrixQ a = data.metric_inverse();
  const std::size_t n = a.rows();
  while (!a.is_zero()) {
    VectorQ y(n, Rational(0));
    std::size_t i = 0;
    while (i < n && a(i, i) == 0) ++i;
    if (i < n) {
      y[i] = 1;
    } else {
      // No diagonal pivot: use e_i + e_j for a nonzero off-diagonal entry.
      bool found = false;
      for (std::size_t r = 0; r < n && !found; ++r)
        for (std::size_t c = r + 1; c < n && !found; ++c)
          if (a(r, c) != 0) {
            y[r] = 1;
            y[c] = 1;
            found = true;
          }
    }
    const VectorQ x = a * y;
    const Rational d = dot(y, x);
    set.affinors.push_back({Rational(1 / d), x});
    a -= MatrixQ::outer(x, x) * Rational(1 / d);
  }
  return set;
}

AffinorSet default_affinors(const FrobeniusData& data) {
  if (data.has_covectors() && data.metric_is_pairing() && !data.regularized()) {
    AffinorSet set = check_vector_affinors(data);
    if (set.metric() == data.metric_inverse()) return set;
  }
  return metric_affinors(data);
}

MatrixQ affinor_at(const Tensor3& c, const VectorQ& x) {
  const std::size_t n = c.dim();
  MatrixQ w(n, n);
  Rational tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) addmul(w(i, j), c(i, j, k), x[k], tmp);
  return w;
}

Tensor3 affinor_derivative_at(const Tensor4& dc, const VectorQ& x) {
  const std::size_t n = dc.dim();
  Tensor3 dw(n);
  Rational tmp;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) addmul(dw(m, i, j), dc(m, i, j, k), x[k], tmp);
  return dw;
}

bool symmetry_condition_holds(const MatrixQ& wa, const Tensor3& dwa, const MatrixQ& wb, const Tensor3& dwb) {
  const std::size_t n = wa.rows();
  Rational lhs, rhs, tmp;
  // Both sides are symmetric in (l, q).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t q = l; q < n; ++q) {
        lhs = 0;
        rhs = 0;
        for (std::size_t m = 0; m < n; ++m) {
          addmul(lhs, wb(m, q), dwa(m, k, l), tmp);
          addmul(lhs, wb(m, l), dwa(m, k, q), tmp);
          addmul(lhs, wa(k, m), dwb(l, m, q), tmp);
          addmul(lhs, wa(k, m), dwb(q, m, l), tmp);
          addmul(rhs, wa(m, q), dwb(m, k, l), tmp);
          addmul(rhs, wa(m, l), dwb(m, k, q), tmp);
          addmul(rhs, wb(k, m), dwa(l, m, q), tmp);
          addmul(rhs, wb(k, m), dwa(q, m, l), tmp);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

bool zerocurv_holds(const std::vector<Rational>& weights, const std::vector<MatrixQ>& w) {
  if (w.empty()) return true;
  const std::size_t n = w.front().rows();
  Rational acc, tmp, x;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t h = k + 1; h < n; ++h) {
          acc = 0;
          for (std::size_t a = 0; a < w.size(); ++a) {
            x = w[a](i, k) * w[a](j, h) - w[a](i, h) * w[a](j, k);
            addmul(acc, weights[a], x, tmp);
          }
          if (acc != 0) return false;
        }
  return true;
}

bool check_symmetry_condition_at(const FrobeniusData& data, const AffinorSet& set, const VectorQ& u,
                                 std::size_t a, std::size_t b) {
  const Tensor3 c = structure_constants_at(data, u);
  const Tensor4 dc = d_structure_constants_at(data, u);
  const auto& xa = set.affinors.at(a).core;
  const auto& xb = set.affinors.at(b).core;
  return symmetry_condition_holds(affinor_at(c, xa), affinor_derivative_at(dc, xa), affinor_at(c, xb),
                                  affinor_derivative_at(dc, xb));
}

bool check_commutativity_at(const FrobeniusData& data, const AffinorSet& set, const VectorQ& u,
                            std::size_t a, std::size_t b) {
  const Tensor3 c = structure_constants_at(data, u);
  return commutator(affinor_at(c, set.affinors.at(a).core), affinor_at(c, set.affinors.at(b).core)).is_zero();
}

bool check_zerocurv_at(const FrobeniusData& data, const AffinorSet& set, const VectorQ& u) {
  const Tensor3 c = structure_constants_at(data, u);
  std::vector<Rational> weights;
  std::vector<MatrixQ> w;
  for (const auto& a : set.affinors) {
    weights.push_back(a.weight);
    w.push_back(affinor_at(c, a.core));
  }
  return zerocurv_holds(weights, w);
}

bool check_symmetriesof_at(const FrobeniusData& data, const VectorQ& u, const MatrixQ& grad_x) {
  const Tensor3 c = structure_constants_at(data, u);
  const std::size_t n = c.dim();
  Rational x, y, tmp;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        x = 0;
        y = 0;
        for (std::size_t l = 0; l < n; ++l) {
          addmul(x, c(i, j, l), grad_x(l, k), tmp);
          addmul(y, c(i, k, l), grad_x(l, j), tmp);
        }
        if (x != y) return false;
      }
  return true;
}

PoissonPointReport check_poisson_conditions_at(const FrobeniusData& data, const AffinorSet& set,
                                               const VectorQ& u) {
  PoissonPointReport report;
  report.point = u;
  const Tensor3 c = structure_constants_at(data, u);
  const Tensor4 dc = d_structure_constants_at(data, u);
  std::vector<MatrixQ> w;
  std::vector<Tensor3> dw;
  std::vector<Rational> weights;
  for (const auto& a : set.affinors) {
    w.push_back(affinor_at(c, a.core));
    dw.push_back(affinor_derivative_at(dc, a.core));
    weights.push_back(a.weight);
  }
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      if (report.symmetry && !symmetry_condition_holds(w[a], dw[a], w[b], dw[b])) {
        report.symmetry = false;
        report.symmetry_witness = {a, b};
      }
      if (report.commutativity && !commutator(w[a], w[b]).is_zero()) {
        report.commutativity = false;
        report.commutativity_witness = {a, b};
      }
    }
  report.zerocurv = zerocurv_holds(weights, w);
  return report;
}

NonlocalOperator::NonlocalOperator(FrobeniusData data) : NonlocalOperator(data, default_affinors(data)) {}

NonlocalOperator::NonlocalOperator(FrobeniusData data, AffinorSet affinors)
    : data_(std::move(data)), affinors_(std::move(affinors)) {
  const std::size_t n = data_.dimension();
  for (const auto& a : affinors_.affinors) {
    wd_.push_back(a.weight.get_d());
    for (std::size_t i = 0; i < n; ++i) xd_.push_back(a.core[i].get_d());
  }
  if (data_.has_covectors()) {
    const auto& cv = data_.covectors().covectors;
    const std::size_t m = cv.size();
    MatrixQ t(m, m);
    const MatrixQ& g = data_.metric_inverse();
    for (std::size_t b = 0; b < m; ++b) {
      const VectorQ gv = g * cv[b].direction;
      for (std::size_t c = b; c < m; ++c) {
        t(b, c) = cv[b].radicand * cv[c].radicand * dot(cv[c].direction, gv);
        t(c, b) = t(b, c);
      }
    }
    set_table(t);
  }
}

void NonlocalOperator::set_table(const MatrixQ& t) {
  table_ = t;
  table_d_.clear();
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) table_d_.push_back(t(i, j).get_d());
}

NonlocalOperator assemble_nonlocal_operator(const FrobeniusData& data) { return NonlocalOperator(data); }

std::vector<GridField> affinor_fields(const NonlocalOperator& op, const LoopGrid& loop) {
  const std::size_t n = op.data().dimension(), N = loop.points(), m = op.affinors().size();
  if (loop.dimension() != n) throw InputError("loop dimension differs from the operator's");
  std::vector<GridField> out(m, GridField(N * n, 0.0));
  const auto& x = op.affinor_cores();
  for (std::size_t k = 0; k < N; ++k) {
    const auto c = structure_constants_double(op.data(), loop.u(k));
    const auto ux = loop.ux(k);
    // (u_x o)^i_j = c^i_{jl} u_x^l
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t q = 0; q < n; ++q) s += c[(i * n + j) * n + q] * ux[q];
        l[i * n + j] = s;
      }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) s += l[i * n + j] * x[a * n + j];
        out[a][k * n + i] = s;
      }
  }
  return out;
}

namespace {

double dot_at(const GridField& a, const GridField& b, std::size_t k, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[k * n + i] * b[k * n + i];
  return s;
}

}  // namespace

GridField apply_nonlocal(const NonlocalOperator& op, const LoopGrid& loop, const GridField& g,
                         const ApplyOptions& options) {
  const std::size_t n = op.data().dimension(), N = loop.points(), m = op.affinors().size();
  if (g.size() != N * n) throw InputError("covector field has the wrong size");
  if (options.anchors && options.anchors->size() != n) throw InputError("one anchor per basis index expected");
  const auto fields = affinor_fields(op, loop);
  const auto& x = op.affinor_cores();
  Spectral sp(N);
  GridField out(N * n, 0.0);
  std::vector<double> s(N);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t k = 0; k < N; ++k) s[k] = dot_at(fields[a], g, k, n);
    const double mean = Spectral::mean(s);
    if (std::abs(mean) > options.mean_tolerance)
      throw InputError("integrand of affinor " + std::to_string(a) + " has mean " + std::to_string(mean) +
                       "; the inverse derivative is undefined");
    auto anti = sp.antiderivative(s);
    if (options.anchors) {
      double target = 0;
      for (std::size_t p = 0; p < n; ++p) target += x[a * n + p] * (*options.anchors)[p];
      const double shift = target - anti[0];
      for (auto& v : anti) v += shift;
    }
    const double w = op.affinor_weights()[a];
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < n; ++i) out[k * n + i] += w * fields[a][k * n + i] * anti[k];
  }
  return out;
}

GridField apply_nonlocal_double_sum(const NonlocalOperator& op, const LoopGrid& loop, const GridField& g,
                                    double mean_tolerance) {
  if (!op.has_table()) throw InputError("the double-sum form needs a covector source");
  const FrobeniusData& data = op.data();
  const std::size_t n = data.dimension(), N = loop.points();
  if (g.size() != N * n) throw InputError("covector field has the wrong size");
  const auto& cv = data.covectors().covectors;
  const std::size_t m = cv.size();
  std::vector<std::vector<double>> v(m, std::vector<double>(n)), w(m, std::vector<double>(n));
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      v[b][i] = cv[b].direction[i].get_d();
      w[b][i] = data.cores()[b][i].get_d();
    }
  // ell_b = d_x log v_b(u), q_b = ell_b (w_b . g)
  std::vector<std::vector<double>> ell(m, std::vector<double>(N)), q(m, std::vector<double>(N));
  for (std::size_t k = 0; k < N; ++k) {
    const auto u = loop.u(k), ux = loop.ux(k);
    for (std::size_t b = 0; b < m; ++b) {
      double vu = 0, vux = 0, wg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        vu += v[b][i] * u[i];
        vux += v[b][i] * ux[i];
        wg += w[b][i] * g[k * n + i];
      }
      ell[b][k] = vux / vu;
      q[b][k] = ell[b][k] * wg;
    }
  }
  Spectral sp(N);
  GridField out(N * n, 0.0);
  std::vector<double> s(N);
  for (std::size_t b = 0; b < m; ++b) {
    std::fill(s.begin(), s.end(), 0.0);
    for (std::size_t c = 0; c < m; ++c) {
      const double t = op.table_d_[b * m + c];
      if (t == 0) continue;
      for (std::size_t k = 0; k < N; ++k) s[k] += t * q[c][k];
    }
    const double mean = Spectral::mean(s);
    if (std::abs(mean) > mean_tolerance)
      throw InputError("integrand of covector " + std::to_string(b) + " has mean " + std::to_string(mean) +
                       "; the inverse derivative is undefined");
    const auto anti = sp.antiderivative(s);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < n; ++i) out[k * n + i] += ell[b][k] * w[b][i] * anti[k];
  }
  return out;
}

namespace {

double pairing(const GridField& f, const GridField& g) {
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s;
}

}  // namespace

double skew_symmetry_test(const NonlocalOperator& op, const LoopGrid& loop, const GridField& f,
                          const GridField& g, OperatorForm form, double mean_tolerance) {
  GridField pf, pg;
  if (form == OperatorForm::Affinor) {
    ApplyOptions opt;
    opt.mean_tolerance = mean_tolerance;
    pf = apply_nonlocal(op, loop, f, opt);
    pg = apply_nonlocal(op, loop, g, opt);
  } else {
    pf = apply_nonlocal_double_sum(op, loop, f, mean_tolerance);
    pg = apply_nonlocal_double_sum(op, loop, g, mean_tolerance);
  }
  const double h = 2.0 * std::numbers::pi / static_cast<double>(loop.points());
  return std::abs(h * (pairing(f, pg) + pairing(g, pf)));
}

GridField project_admissible(const NonlocalOperator& op, const LoopGrid& loop, const GridField& g) {
  const auto fields = affinor_fields(op, loop);
  const std::size_t m = fields.size(), len = g.size();
  Eigen::MatrixXd a(m, len);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < len; ++c) a(r, c) = fields[r][c];
  const Eigen::Map<const Eigen::VectorXd> gv(g.data(), len);
  const Eigen::MatrixXd gram = a * a.transpose();
  const Eigen::VectorXd coef = gram.completeOrthogonalDecomposition().solve(a * gv);
  const Eigen::VectorXd projected = gv - a.transpose() * coef;
  return GridField(projected.data(), projected.data() + len);
}

double sup_norm(const GridField& f) {
  double s = 0;
  for (double v : f) s = std::max(s, std::abs(v));
  return s;
}

double sup_diff(const GridField& a, const GridField& b) {
  if (a.size() != b.size()) throw InputError("fields differ in size");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

namespace {

struct LoopFrame {
  VectorQ centre;
  double reach;  // admissible sup-norm displacement
};

LoopFrame loop_frame(const FrobeniusData& data, Rng& rng, const LoopOptions& options) {
  const std::size_t n = data.dimension();
  LoopFrame frame;
  if (!data.has_covectors()) {
    frame.centre.resize(n);
    for (auto& c : frame.centre) {
      c = Rational(rng.uniform_int(-4, 4), 4) * Rational(options.box);
      c.canonicalize();
    }
    frame.reach = options.spread;
    return frame;
  }
  frame.centre = sample_admissible_point(data, rng);
  double reach = std::numeric_limits<double>::infinity();
  for (const auto& c : data.covectors().covectors) {
    double l1 = 0;
    for (const auto& x : c.direction) l1 += std::abs(x.get_d());
    reach = std::min(reach, std::abs(dot(c.direction, frame.centre).get_d()) / l1);
  }
  frame.reach = options.margin * reach;
  return frame;
}

}  // namespace

LoopSpec random_loop(const FrobeniusData& data, Rng& rng, const LoopOptions& options) {
  const LoopFrame frame = loop_frame(data, rng, options);
  const std::size_t n = data.dimension(), modes = std::max<std::size_t>(options.modes, 1);
  const double amp = frame.reach / (2.0 * static_cast<double>(modes));
  LoopSpec spec;
  spec.dimension = n;
  for (std::size_t i = 0; i < n; ++i) {
    FourierCoordinate fc;
    fc.coord = i;
    fc.mean = frame.centre[i];
    for (std::size_t k = 0; k < modes; ++k) {
      fc.cos.push_back(amp * rng.uniform(-1, 1));
      fc.sin.push_back(amp * rng.uniform(-1, 1));
    }
    spec.coords.push_back(std::move(fc));
  }
  return spec;
}

LoopSpec geometric_loop(const FrobeniusData& data, Rng& rng, double ratio, std::size_t modes,
                        const LoopOptions& options) {
  if (ratio <= 0 || ratio >= 1) throw InputError("decay ratio must lie in (0, 1)");
  const LoopFrame frame = loop_frame(data, rng, options);
  const std::size_t n = data.dimension();
  const double scale = frame.reach * (1 - ratio) / (2 * ratio);
  LoopSpec spec;
  spec.dimension = n;
  for (std::size_t i = 0; i < n; ++i) {
    FourierCoordinate fc;
    fc.coord = i;
    fc.mean = frame.centre[i];
    double rk = 1;
    for (std::size_t k = 1; k <= modes; ++k) {
      rk *= ratio;
      fc.cos.push_back(scale * rk * rng.uniform(-1, 1));
      fc.sin.push_back(scale * rk * rng.uniform(-1, 1));
    }
    spec.coords.push_back(std::move(fc));
  }
  return spec;
}

GridField random_field(const LoopGrid& loop, Rng& rng, std::size_t modes) {
  const std::size_t n = loop.dimension(), N = loop.points();
  GridField f(N * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double c0 = rng.uniform(-1, 1);
    std::vector<double> a(modes), b(modes);
    for (std::size_t k = 0; k < modes; ++k) {
      a[k] = rng.uniform(-1, 1);
      b[k] = rng.uniform(-1, 1);
    }
    for (std::size_t p = 0; p < N; ++p) {
      const double x = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(N);
      double v = c0;
      for (std::size_t k = 0; k < modes; ++k)
        v += a[k] * std::cos((k + 1) * x) + b[k] * std::sin((k + 1) * x);
      f[p * n + i] = v;
    }
  }
  return f;
}

}  // namespace veesys
