#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "veesys/matrix.hpp"
#include "veesys/system.hpp"
#include "veesys/vee.hpp"

namespace veesys {

/// rho = alpha (x) alpha-check = r (G^{-1} v) v^T.
struct RankOneEndo {
  MatrixQ matrix;
  std::size_t source = 0;
};

std::vector<RankOneEndo> endomorphisms(const ConcreteSystem& system, const GramMetric& g);

struct KohnoGroupCheck {
  PlaneGroup plane;
  bool satisfied = false;
  std::optional<std::size_t> witness;  // member J with [sum rho_K, rho_J] != 0
  MatrixQ commutator;                  // that commutator
};

KohnoGroupCheck check_kohno_group(const std::vector<RankOneEndo>& endos, const PlaneGroup& plane);

struct KohnoVerdict {
  bool holds = false;
  std::vector<KohnoGroupCheck> groups;
};

/// Codimension-two intersections are visited through their annihilator planes.
/// Throws SingularMatrixError when the Gram metric is degenerate.
KohnoVerdict has_kohno_property(const ConcreteSystem& system);

struct EquivalenceReport {
  bool vee = false;
  bool kohno = false;
  bool agree() const { return vee == kohno; }
  /// Planes on which the two per-plane verdicts differ.
  std::vector<PlaneGroup> discrepancies;
  VeeVerdict vee_verdict;
  KohnoVerdict kohno_verdict;
};

EquivalenceReport crosscheck_equivalence(const ConcreteSystem& system);

}  // namespace veesys
