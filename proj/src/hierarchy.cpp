#include "veesys/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace veesys {

namespace {

MPoly var(std::size_t n, std::size_t i) { return MPoly::variable(n, i); }

MPoly mono(std::size_t n, const Rational& c, std::initializer_list<unsigned> e) {
  MPoly::Exponents ex(e);
  ex.resize(n, 0);
  return MPoly::term(c, ex);
}

// sum over terms of p: coefficient / (deg + 1) * term * u^i
MPoly radial_times(const MPoly& p, std::size_t i) {
  MPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    unsigned d = 0;
    for (auto x : e) d += x;
    auto e2 = e;
    e2[i] += 1;
    out.add_term(e2, c / Rational(d + 1));
  }
  return out;
}

std::vector<MPoly> field_of(const PolyFrobenius& data, const MPoly& h) {
  const std::size_t n = data.n;
  std::vector<MPoly> dh, x(n, MPoly(n));
  for (std::size_t l = 0; l < n; ++l) dh.push_back(h.derivative(l));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (data.eta_inv(i, l) != 0) x[i] += dh[l] * data.eta_inv(i, l);
  return x;
}

}  // namespace

PolyFrobenius make_poly_frobenius(std::string name, const MatrixQ& eta, const MPoly& potential) {
  PolyFrobenius d;
  d.name = std::move(name);
  d.n = potential.nvars();
  if (eta.rows() != d.n || !eta.is_square() || !eta.is_symmetric())
    throw InputError("metric must be a symmetric " + std::to_string(d.n) + "x" + std::to_string(d.n) + " matrix");
  d.eta = eta;
  d.eta_inv = matrix_inverse(eta);
  d.potential = potential;
  const std::size_t n = d.n;
  std::vector<MPoly> f3(n * n * n, MPoly(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) f3[(i * n + j) * n + k] = potential.derivative(i).derivative(j).derivative(k);
  d.c.assign(n * n * n, MPoly(n));
  int deg = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        MPoly& cijk = d.c[(i * n + j) * n + k];
        for (std::size_t l = 0; l < n; ++l)
          if (d.eta_inv(i, l) != 0) cijk += f3[(l * n + j) * n + k] * d.eta_inv(i, l);
        deg = std::max(deg, cijk.total_degree());
      }

  // A nonzero polynomial of degree <= D in each variable cannot vanish on {0..D}^n.
  const unsigned side = static_cast<unsigned>(2 * deg + 1);
  const FrobeniusData fd = d.frobenius();
  VectorQ u(n, Rational(0));
  std::vector<unsigned> idx(n, 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) u[i] = idx[i];
    if (!check_associativity_at(fd, u))
      throw InputError("potential of '" + d.name + "' violates WDVV at a grid point");
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == side) idx[pos++] = 0;
    if (pos == n) break;
  }
  return d;
}

PolyFrobenius builtin_poly_frobenius(const std::string& name) {
  if (name == "kdv2d") {
    const std::size_t n = 2;
    MPoly f = mono(n, Rational(1, 2), {2, 1}) + mono(n, Rational(1, 24), {0, 4});
    return make_poly_frobenius(name, MatrixQ{{0, 1}, {1, 0}}, f);
  }
  if (name == "trivial1d") return make_poly_frobenius(name, MatrixQ{{1}}, mono(1, Rational(1, 6), {3}));
  if (name == "a3") {
    const std::size_t n = 3;
    MPoly f = mono(n, Rational(1, 2), {2, 0, 1}) + mono(n, Rational(1, 2), {1, 2, 0}) +
              mono(n, Rational(-1, 16), {0, 2, 2}) + mono(n, Rational(1, 960), {0, 0, 5});
    return make_poly_frobenius(name, MatrixQ{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, f);
  }
  throw InputError("unknown polynomial structure '" + name + "'");
}

std::vector<std::string> poly_frobenius_names() { return {"kdv2d", "trivial1d", "a3"}; }

HierarchyLevel base_level(const PolyFrobenius& data, std::size_t p) {
  if (p >= data.n) throw InputError("family index out of range");
  HierarchyLevel level;
  level.p = p;
  level.alpha = -1;
  level.density = MPoly(data.n);
  for (std::size_t l = 0; l < data.n; ++l)
    if (data.eta(p, l) != 0) level.density += var(data.n, l) * data.eta(p, l);
  level.field = field_of(data, level.density);
  return level;
}

std::vector<MPoly> next_hessian(const PolyFrobenius& data, const HierarchyLevel& level) {
  const std::size_t n = data.n;
  std::vector<MPoly> dh;
  for (std::size_t l = 0; l < n; ++l) dh.push_back(level.density.derivative(l));
  std::vector<MPoly> h(n * n, MPoly(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) h[i * n + j] += data.structure(l, i, j) * dh[l];
  return h;
}

MPoly integrate_hessian(const std::vector<MPoly>& hessian, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(hessian[i * n + j] == hessian[j * n + i]))
        throw CompatibilityError(i, j, "Hessian target is not symmetric in (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ")");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(hessian[i * n + j].derivative(k) == hessian[k * n + j].derivative(i)))
          throw CompatibilityError(i, k, "Hessian target is not closed: d_" + std::to_string(k) + " H_" +
                                             std::to_string(i) + std::to_string(j) + " != d_" + std::to_string(i) +
                                             " H_" + std::to_string(k) + std::to_string(j));
  // Radial homotopy twice: g_j = int_0^1 H_ij(tu) u^i dt, h = int_0^1 g_j(tu) u^j dt.
  MPoly h(n);
  for (std::size_t j = 0; j < n; ++j) {
    MPoly g(n);
    for (std::size_t i = 0; i < n; ++i) g += radial_times(hessian[i * n + j], i);
    h += radial_times(g, j);
  }
  return h;
}

HierarchyLevel recursion_step(const PolyFrobenius& data, const HierarchyLevel& level) {
  HierarchyLevel next;
  next.p = level.p;
  next.alpha = level.alpha + 1;
  next.density = integrate_hessian(next_hessian(data, level), data.n);
  next.field = field_of(data, next.density);
  return next;
}

std::vector<HierarchyLevel> build_family(const PolyFrobenius& data, std::size_t p, int max_alpha) {
  std::vector<HierarchyLevel> out{base_level(data, p)};
  while (out.back().alpha < max_alpha) out.push_back(recursion_step(data, out.back()));
  return out;
}

namespace {

void record_difference(RecursionReport& report, const MPoly& expected, const MPoly& actual, RecursionFailure f) {
  const MPoly diff = actual - expected;
  if (diff.is_zero()) return;
  const auto& [e, c] = *diff.terms().begin();
  f.monomial = e;
  f.expected = expected.coefficient(e);
  f.actual = actual.coefficient(e);
  report.ok = false;
  report.failures.push_back(std::move(f));
}

}  // namespace

RecursionReport verify_recursion(const PolyFrobenius& data, const std::vector<HierarchyLevel>& family) {
  RecursionReport report;
  const std::size_t n = data.n;
  for (std::size_t idx = 0; idx < family.size(); ++idx) {
    const auto& lv = family[idx];
    if (lv.alpha == -1) {
      ++report.checked;
      record_difference(report, base_level(data, lv.p).density, lv.density, {lv.p, lv.alpha, 0, 0, {}, 0, 0, "base"});
    }
    for (std::size_t l = 0; l < n; ++l) {
      ++report.checked;
      MPoly lhs(n);
      for (std::size_t i = 0; i < n && i < lv.field.size(); ++i)
        if (data.eta(l, i) != 0) lhs += lv.field[i] * data.eta(l, i);
      record_difference(report, lv.density.derivative(l), lhs, {lv.p, lv.alpha, l, l, {}, 0, 0, "closure"});
    }
    if (idx == 0) continue;
    const auto& prev = family[idx - 1];
    const auto target = next_hessian(data, prev);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ++report.checked;
        record_difference(report, target[i * n + j], lv.density.derivative(i).derivative(j),
                          {lv.p, lv.alpha, i, j, {}, 0, 0, "recursion"});
      }
  }
  return report;
}

GridField gradient_on_loop(const MPoly& h, const LoopGrid& loop) {
  const std::size_t n = loop.dimension(), N = loop.points();
  std::vector<MPoly> dh;
  for (std::size_t l = 0; l < n; ++l) dh.push_back(h.derivative(l));
  GridField out(N * n);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t l = 0; l < n; ++l) out[k * n + l] = dh[l].evaluate(loop.u(k));
  return out;
}

double local_identity_residual(const PolyFrobenius& data, const HierarchyLevel& lower, const HierarchyLevel& upper,
                               const LoopGrid& loop) {
  const std::size_t n = data.n, N = loop.points();
  const GridField g_low = gradient_on_loop(lower.density, loop);
  const GridField g_up = gradient_on_loop(upper.density, loop);
  Spectral sp(N);
  double worst = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const auto rhs = sp.derivative(component(g_up, n, p));
    for (std::size_t k = 0; k < N; ++k) {
      const auto u = loop.u(k), ux = loop.ux(k);
      double lhs = 0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < n; ++q) {
          const MPoly& c = data.structure(j, p, q);
          if (c.is_zero()) continue;
          lhs += c.evaluate(u) * ux[q] * g_low[k * n + j];
        }
      worst = std::max(worst, std::abs(lhs - rhs[k]));
    }
  }
  return worst;
}

namespace {

GridField local_operator(const PolyFrobenius& data, const GridField& dh, std::size_t N) {
  const std::size_t n = data.n;
  Spectral sp(N);
  GridField dx(N * n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto d = sp.derivative(component(dh, n, l));
    for (std::size_t k = 0; k < N; ++k) dx[k * n + l] = d[k];
  }
  GridField out(N * n, 0.0);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) out[k * n + i] += data.eta_inv(i, l).get_d() * dx[k * n + l];
  return out;
}

}  // namespace

double lenard_magri_residual(const PolyFrobenius& data, const NonlocalOperator& q, const HierarchyLevel& upper,
                             const HierarchyLevel& lower, const HierarchyLevel& anchor, const LoopGrid& loop,
                             double mean_tolerance) {
  const std::size_t N = loop.points();
  const GridField p1 = local_operator(data, gradient_on_loop(upper.density, loop), N);
  ApplyOptions opt;
  opt.mean_tolerance = mean_tolerance;
  const GridField anchor_grad = gradient_on_loop(anchor.density, loop);
  opt.anchors = std::vector<double>(anchor_grad.begin(), anchor_grad.begin() + static_cast<long>(data.n));
  const GridField p2 = apply_nonlocal(q, loop, gradient_on_loop(lower.density, loop), opt);
  return sup_diff(p1, p2);
}

double involutivity_residual(const PolyFrobenius& data, const MPoly& a, const MPoly& b, const LoopGrid& loop) {
  const std::size_t N = loop.points();
  const GridField da = gradient_on_loop(a, loop);
  const GridField pb = local_operator(data, gradient_on_loop(b, loop), N);
  double s = 0;
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * pb[i];
  return std::abs(s * 2.0 * std::numbers::pi / static_cast<double>(N));
}

}  // namespace veesys
