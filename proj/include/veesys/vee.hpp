#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "veesys/matrix.hpp"
#include "veesys/param_function.hpp"
#include "veesys/system.hpp"

namespace veesys {

/// G = sum_a r_a v_a v_a^T with its exact inverse when nonsingular.
struct GramMetric {
  MatrixQ matrix;
  std::optional<MatrixQ> inverse;
  std::size_t rank = 0;

  bool nonsingular() const { return inverse.has_value(); }
  /// Throws SingularMatrixError when singular.
  const MatrixQ& inv() const;
};

GramMetric gram_metric(const ConcreteSystem& system);

using ParamMatrix = std::vector<std::vector<ParamFunction>>;

/// Gram matrix of a parametric family, entrywise rational functions.
ParamMatrix symbolic_gram(const CovectorSystem& family);

/// Check-vector cores G^{-1} v_a, one per covector.
std::vector<VectorQ> check_cores(const ConcreteSystem& system, const GramMetric& g);

/// B_ab = v_a^T G^{-1} v_b, so that beta(alpha-check) = sqrt(r_a r_b) B_ab.
MatrixQ pairing_matrix(const ConcreteSystem& system, const GramMetric& g);

struct PlaneGroup {
  MatrixQ basis;                     // 2 x n reduced row echelon form of the span
  std::vector<std::size_t> members;  // sorted covector indices
};

/// One group per distinct two-dimensional span of a pair of directions,
/// ordered by member list.
std::vector<PlaneGroup> enumerate_planes(const ConcreteSystem& system);

struct PlaneCheck {
  PlaneGroup plane;
  bool satisfied = false;
  /// lambda per member (same order as plane.members); absent where the
  /// vector sum is not proportional to the check vector.
  std::vector<std::optional<Rational>> lambdas;
  std::optional<std::size_t> witness;  // failing covector index
  VectorQ residual;                    // sum - lambda * check vector at the witness
};

PlaneCheck check_vee_plane(const ConcreteSystem& system, const GramMetric& g, const MatrixQ& b,
                           const PlaneGroup& plane);

struct VeeVerdict {
  bool holds = false;
  std::vector<PlaneCheck> planes;

  std::vector<const PlaneCheck*> failures() const;
};

/// Throws SingularMatrixError when the Gram metric is degenerate.
VeeVerdict is_vee_system(const ConcreteSystem& system);

}  // namespace veesys
