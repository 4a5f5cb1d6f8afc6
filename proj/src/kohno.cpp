#include "veesys/kohno.hpp"

namespace veesys {

std::vector<RankOneEndo> endomorphisms(const ConcreteSystem& system, const GramMetric& g) {
  const auto cores = check_cores(system, g);
  std::vector<RankOneEndo> out;
  out.reserve(system.size());
  for (std::size_t a = 0; a < system.size(); ++a) {
    const auto& c = system.covectors[a];
    out.push_back({MatrixQ::outer(cores[a], c.direction) * c.radicand, a});
  }
  return out;
}

KohnoGroupCheck check_kohno_group(const std::vector<RankOneEndo>& endos, const PlaneGroup& plane) {
  KohnoGroupCheck out;
  out.plane = plane;
  out.satisfied = true;
  const std::size_t n = endos.empty() ? 0 : endos.front().matrix.rows();
  MatrixQ sum(n, n);
  for (auto k : plane.members) sum += endos[k].matrix;
  for (auto j : plane.members) {
    MatrixQ comm = commutator(sum, endos[j].matrix);
    if (!comm.is_zero()) {
      out.satisfied = false;
      out.witness = j;
      out.commutator = std::move(comm);
      break;
    }
  }
  return out;
}

KohnoVerdict has_kohno_property(const ConcreteSystem& system) {
  const GramMetric g = gram_metric(system);
  const auto endos = endomorphisms(system, g);
  KohnoVerdict verdict;
  verdict.holds = true;
  for (const auto& plane : enumerate_planes(system)) {
    verdict.groups.push_back(check_kohno_group(endos, plane));
    verdict.holds = verdict.holds && verdict.groups.back().satisfied;
  }
  return verdict;
}

EquivalenceReport crosscheck_equivalence(const ConcreteSystem& system) {
  EquivalenceReport out;
  out.vee_verdict = is_vee_system(system);
  out.kohno_verdict = has_kohno_property(system);
  out.vee = out.vee_verdict.holds;
  out.kohno = out.kohno_verdict.holds;
  const auto& vp = out.vee_verdict.planes;
  const auto& kg = out.kohno_verdict.groups;
  for (std::size_t i = 0; i < vp.size() && i < kg.size(); ++i)
    if (vp[i].satisfied != kg[i].satisfied) out.discrepancies.push_back(vp[i].plane);
  return out;
}

}  // namespace veesys
