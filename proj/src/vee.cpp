#include "veesys/vee.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "veesys/error.hpp"

namespace veesys {

const MatrixQ& GramMetric::inv() const {
  if (!inverse)
    throw SingularMatrixError(rank, "Gram metric is singular; use the regularization workflow");
  return *inverse;
}

GramMetric gram_metric(const ConcreteSystem& system) {
  const std::size_t n = system.dimension;
  GramMetric g;
  g.matrix = MatrixQ(n, n);
  for (const auto& c : system.covectors)
    for (std::size_t i = 0; i < n; ++i) {
      if (c.direction[i] == 0) continue;
      const Rational ri = c.radicand * c.direction[i];
      for (std::size_t j = 0; j < n; ++j) g.matrix(i, j) += ri * c.direction[j];
    }
  try {
    g.inverse = matrix_inverse(g.matrix);
    g.rank = n;
  } catch (const SingularMatrixError& e) {
    g.rank = e.rank();
  }
  return g;
}

ParamMatrix symbolic_gram(const CovectorSystem& family) {
  const std::size_t n = family.dimension;
  ParamMatrix g(n, std::vector<ParamFunction>(n));
  for (const auto& c : family.covectors)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Rational vv = c.direction[i] * c.direction[j];
        if (vv != 0) g[i][j] += c.radicand * ParamFunction(vv);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i];
  return g;
}

std::vector<VectorQ> check_cores(const ConcreteSystem& system, const GramMetric& g) {
  const MatrixQ& ginv = g.inv();
  std::vector<VectorQ> out;
  out.reserve(system.size());
  for (const auto& c : system.covectors) out.push_back(ginv * c.direction);
  return out;
}

MatrixQ pairing_matrix(const ConcreteSystem& system, const GramMetric& g) {
  const auto cores = check_cores(system, g);
  const std::size_t m = system.size();
  MatrixQ b(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = a; c < m; ++c) {
      b(a, c) = dot(system.covectors[a].direction, cores[c]);
      b(c, a) = b(a, c);
    }
  return b;
}

std::vector<PlaneGroup> enumerate_planes(const ConcreteSystem& system) {
  std::map<std::vector<Rational>, std::set<std::size_t>> groups;
  std::map<std::vector<Rational>, MatrixQ> bases;
  const std::size_t m = system.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (collinear(system.covectors[i].direction, system.covectors[j].direction)) continue;
      MatrixQ basis = rref(MatrixQ::from_rows({system.covectors[i].direction, system.covectors[j].direction}));
      std::vector<Rational> key;
      for (std::size_t r = 0; r < basis.rows(); ++r)
        for (std::size_t c = 0; c < basis.cols(); ++c) key.push_back(basis(r, c));
      auto& members = groups[key];
      members.insert(i);
      members.insert(j);
      bases.emplace(key, std::move(basis));
    }
  std::vector<PlaneGroup> out;
  for (auto& [key, members] : groups)
    out.push_back({bases.at(key), std::vector<std::size_t>(members.begin(), members.end())});
  std::sort(out.begin(), out.end(),
            [](const PlaneGroup& a, const PlaneGroup& b) { return a.members < b.members; });
  return out;
}

namespace {

std::optional<Rational> proportionality(const VectorQ& sum, const VectorQ& w) {
  std::size_t k = 0;
  while (k < w.size() && w[k] == 0) ++k;
  if (k == w.size()) return std::nullopt;
  Rational lambda = sum[k] / w[k];
  for (std::size_t i = 0; i < w.size(); ++i)
    if (sum[i] != lambda * w[i]) return std::nullopt;
  return lambda;
}

VectorQ residual(const VectorQ& sum, const Rational& lambda, const VectorQ& w) {
  VectorQ r(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) r[i] = sum[i] - lambda * w[i];
  return r;
}

}  // namespace

PlaneCheck check_vee_plane(const ConcreteSystem& system, const GramMetric& g, const MatrixQ& b,
                           const PlaneGroup& plane) {
  PlaneCheck out;
  out.plane = plane;
  const auto& mem = plane.members;
  const auto& cv = system.covectors;

  if (mem.size() == 2) {
    const std::size_t a1 = mem[0], a2 = mem[1];
    out.satisfied = b(a1, a2) == 0;
    out.lambdas = {Rational(cv[a1].radicand * b(a1, a1)), Rational(cv[a2].radicand * b(a2, a2))};
    if (!out.satisfied) {
      out.witness = a1;
      // Off-diagonal part of the sum: r_2 B_21 G^{-1} v_2.
      const MatrixQ& ginv = g.inv();
      out.residual = ginv * cv[a2].direction;
      for (auto& x : out.residual) x *= cv[a2].radicand * b(a2, a1);
    }
    return out;
  }

  const MatrixQ& ginv = g.inv();
  std::vector<VectorQ> cores;
  for (auto a : mem) cores.push_back(ginv * cv[a].direction);
  const std::size_t n = system.dimension;

  std::vector<VectorQ> sums;
  for (std::size_t ia = 0; ia < mem.size(); ++ia) {
    VectorQ sum(n);
    for (std::size_t ib = 0; ib < mem.size(); ++ib) {
      const Rational coef = cv[mem[ib]].radicand * b(mem[ib], mem[ia]);
      if (coef == 0) continue;
      for (std::size_t k = 0; k < n; ++k) sum[k] += coef * cores[ib][k];
    }
    out.lambdas.push_back(proportionality(sum, cores[ia]));
    sums.push_back(std::move(sum));
  }

  out.satisfied = true;
  std::optional<Rational> common;
  for (std::size_t ia = 0; ia < mem.size(); ++ia) {
    const auto& lam = out.lambdas[ia];
    if (lam && !common) common = lam;
    if (!lam || *lam != *common) {
      out.satisfied = false;
      out.witness = mem[ia];
      Rational ref = common ? *common : Rational(0);
      if (!lam) {
        // Best proportional fit along the first nonzero coordinate.
        std::size_t k = 0;
        while (cores[ia][k] == 0) ++k;
        ref = sums[ia][k] / cores[ia][k];
      }
      out.residual = residual(sums[ia], ref, cores[ia]);
      break;
    }
  }
  return out;
}

std::vector<const PlaneCheck*> VeeVerdict::failures() const {
  std::vector<const PlaneCheck*> out;
  for (const auto& p : planes)
    if (!p.satisfied) out.push_back(&p);
  return out;
}

VeeVerdict is_vee_system(const ConcreteSystem& system) {
  const GramMetric g = gram_metric(system);
  g.inv();
  const MatrixQ b = pairing_matrix(system, g);
  VeeVerdict verdict;
  verdict.holds = true;
  for (const auto& plane : enumerate_planes(system)) {
    verdict.planes.push_back(check_vee_plane(system, g, b, plane));
    verdict.holds = verdict.holds && verdict.planes.back().satisfied;
  }
  return verdict;
}

}  // namespace veesys
