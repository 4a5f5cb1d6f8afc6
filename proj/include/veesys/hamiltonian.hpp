#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "veesys/frobenius.hpp"
#include "veesys/matrix.hpp"
#include "veesys/rng.hpp"
#include "veesys/spectral.hpp"

namespace veesys {

/// Constant vector field X with sign/weight eps; contributes eps X X^T to the
/// contravariant metric and W = X o to the operator.
struct Affinor {
  Rational weight;
  VectorQ core;
};

struct AffinorSet {
  std::vector<Affinor> affinors;
  std::string origin;  // "check-vectors" or "metric"

  std::size_t size() const { return affinors.size(); }
  /// sum eps X X^T
  MatrixQ metric() const;
};

/// X_a = P^{-1} v_a with weight r_a (requires a covector source).
AffinorSet check_vector_affinors(const FrobeniusData& data);
/// A congruence diagonalization eta^{-1} = sum eps_k X_k X_k^T.
AffinorSet metric_affinors(const FrobeniusData& data);
/// Check vectors when they reproduce eta^{-1}, otherwise the diagonalization.
AffinorSet default_affinors(const FrobeniusData& data);

/// W(i, j) = c^i_{jk} X^k.
MatrixQ affinor_at(const Tensor3& c, const VectorQ& x);
/// dW(m, i, j) = d_m c^i_{jk} X^k, stored as Tensor3 (m, i, j).
Tensor3 affinor_derivative_at(const Tensor4& dc, const VectorQ& x);

// Identities on evaluated affinors and their first derivatives.
bool symmetry_condition_holds(const MatrixQ& wa, const Tensor3& dwa, const MatrixQ& wb, const Tensor3& dwb);
bool zerocurv_holds(const std::vector<Rational>& weights, const std::vector<MatrixQ>& w);

bool check_symmetry_condition_at(const FrobeniusData& data, const AffinorSet& set, const VectorQ& u,
                                 std::size_t a, std::size_t b);
bool check_commutativity_at(const FrobeniusData& data, const AffinorSet& set, const VectorQ& u,
                            std::size_t a, std::size_t b);
bool check_zerocurv_at(const FrobeniusData& data, const AffinorSet& set, const VectorQ& u);

/// c^i_{jl} dX(l, k) = c^i_{kl} dX(l, j) for all i, j, k, with dX(l, k) = d_k X^l.
bool check_symmetriesof_at(const FrobeniusData& data, const VectorQ& u, const MatrixQ& grad_x);

struct PoissonPointReport {
  VectorQ point;
  bool symmetry = true;
  bool commutativity = true;
  bool zerocurv = true;
  std::optional<std::pair<std::size_t, std::size_t>> symmetry_witness;
  std::optional<std::pair<std::size_t, std::size_t>> commutativity_witness;
  bool ok() const { return symmetry && commutativity && zerocurv; }
};

/// All three conditions for every unordered affinor pair at u, evaluating c and
/// dc once.
PoissonPointReport check_poisson_conditions_at(const FrobeniusData& data, const AffinorSet& set,
                                               const VectorQ& u);

/// Purely non-local operator sum_a eps_a (X_a o u_x) d^{-1} (X_a o u_x), and,
/// for covector sources, the equivalent double sum over covectors with
/// coefficient table T(b, c) = r_b r_c v_b^T eta^{-1} v_c.
class NonlocalOperator {
 public:
  explicit NonlocalOperator(FrobeniusData data);
  NonlocalOperator(FrobeniusData data, AffinorSet affinors);

  const FrobeniusData& data() const { return data_; }
  const AffinorSet& affinors() const { return affinors_; }
  bool has_table() const { return data_.has_covectors(); }
  const MatrixQ& table() const { return table_; }
  /// Replaces the coefficient table (used to probe the skew-symmetry test).
  void set_table(const MatrixQ& t);

  const std::vector<double>& affinor_cores() const { return xd_; }  // size * n
  const std::vector<double>& affinor_weights() const { return wd_; }

 private:
  FrobeniusData data_;
  AffinorSet affinors_;
  MatrixQ table_;
  std::vector<double> xd_, wd_, table_d_;
  friend GridField apply_nonlocal_double_sum(const NonlocalOperator&, const LoopGrid&, const GridField&, double);
};

NonlocalOperator assemble_nonlocal_operator(const FrobeniusData& data);

struct ApplyOptions {
  double mean_tolerance = 1e-9;
  /// Values at grid point 0 of the antiderivatives d^{-1} b_p, where
  /// b_p = c^j_{pq} u_x^q g_j (one per basis index p). Without anchors each
  /// antiderivative has zero mean.
  std::optional<std::vector<double>> anchors;
};

/// (X_a o u_x) at every grid point, point-major per affinor: A[a][k*n + i].
std::vector<GridField> affinor_fields(const NonlocalOperator& op, const LoopGrid& loop);

/// Throws InputError naming the affinor whose integrand has a nonzero mean.
GridField apply_nonlocal(const NonlocalOperator& op, const LoopGrid& loop, const GridField& g,
                         const ApplyOptions& options = {});
/// Double sum over covectors with the coefficient table.
GridField apply_nonlocal_double_sum(const NonlocalOperator& op, const LoopGrid& loop, const GridField& g,
                                    double mean_tolerance = 1e-9);

enum class OperatorForm { Affinor, DoubleSum };

/// |int f.Pg + int g.Pf|.
double skew_symmetry_test(const NonlocalOperator& op, const LoopGrid& loop, const GridField& f,
                          const GridField& g, OperatorForm form = OperatorForm::Affinor,
                          double mean_tolerance = 1e-9);

/// Orthogonal projection of g onto the fields with int (X_a o u_x).g = 0 for all a.
GridField project_admissible(const NonlocalOperator& op, const LoopGrid& loop, const GridField& g);

double sup_norm(const GridField& f);
double sup_diff(const GridField& a, const GridField& b);

struct LoopOptions {
  std::size_t modes = 3;
  /// Fraction of the distance to the nearest hyperplane the loop may travel.
  double margin = 0.3;
  /// For sources without hyperplanes: centre in [-box, box], amplitude <= spread.
  double box = 1.0;
  double spread = 0.5;
};

/// Random smooth loop staying off every hyperplane; centre is an admissible
/// integer point for covector sources.
LoopSpec random_loop(const FrobeniusData& data, Rng& rng, const LoopOptions& options = {});

/// Loop with geometrically decaying Fourier coefficients ratio^k, k = 1..modes
/// (slow spectral convergence for grid-refinement tests).
LoopSpec geometric_loop(const FrobeniusData& data, Rng& rng, double ratio, std::size_t modes,
                        const LoopOptions& options = {});

/// Random smooth covector field on the loop (independent of the loop's shape).
GridField random_field(const LoopGrid& loop, Rng& rng, std::size_t modes = 3);

}  // namespace veesys
