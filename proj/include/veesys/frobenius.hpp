#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veesys/matrix.hpp"
#include "veesys/mpoly.hpp"
#include "veesys/param_function.hpp"
#include "veesys/rng.hpp"
#include "veesys/system.hpp"
#include "veesys/vee.hpp"

namespace veesys {

/// Metric eta plus a source for the product: either covectors, with
/// c^i_jk(u) = sum_a r_a v_j v_k (P^{-1} v)^i / v(u) and P the pairing metric
/// (the Gram matrix, or the regularized metric), or a polynomial potential F
/// with c = eta^{-1} d^3 F.
class FrobeniusData {
 public:
  /// eta = pairing = Gram matrix. Throws SingularMatrixError when degenerate.
  static FrobeniusData from_system(const ConcreteSystem& system);
  /// eta = pairing = a regularized metric; survivors and the dropped labels.
  static FrobeniusData from_regularized(const MatrixQ& eta, const ConcreteSystem& survivors,
                                        std::vector<std::string> dropped);
  static FrobeniusData from_potential(const MatrixQ& eta, const MPoly& potential);

  /// Same source, different metric (the pairing used for check vectors is kept).
  FrobeniusData with_metric(const MatrixQ& eta) const;

  std::size_t dimension() const { return n_; }
  const MatrixQ& metric() const { return eta_; }
  const MatrixQ& metric_inverse() const { return eta_inv_; }

  bool has_covectors() const { return covectors_.has_value(); }
  const ConcreteSystem& covectors() const;
  /// P^{-1} v_a per covector.
  const std::vector<VectorQ>& cores() const { return cores_; }
  const MatrixQ& pairing() const { return pairing_; }
  /// True when metric and pairing coincide.
  bool metric_is_pairing() const { return eta_ == pairing_; }

  const std::optional<MPoly>& potential() const { return potential_; }
  const std::vector<std::string>& dropped() const { return dropped_; }
  bool regularized() const { return regularized_; }

  bool admissible(const VectorQ& u) const;
  /// Throws HyperplaneError naming the first covector with v(u) = 0.
  void require_admissible(const VectorQ& u) const;

  // Derivative tables of a potential source.
  const std::vector<MPoly>& third_derivatives() const { return d3f_; }
  const std::vector<MPoly>& fourth_derivatives() const { return d4f_; }

 private:
  FrobeniusData() = default;
  void set_metric(const MatrixQ& eta);
  void set_pairing(const MatrixQ& p);

  std::size_t n_ = 0;
  MatrixQ eta_, eta_inv_;
  MatrixQ pairing_;
  std::optional<ConcreteSystem> covectors_;
  std::vector<VectorQ> cores_;
  std::optional<MPoly> potential_;
  std::vector<MPoly> d3f_;  // index (i*n + j)*n + k
  std::vector<MPoly> d4f_;  // index ((m*n + i)*n + j)*n + k
  std::vector<std::string> dropped_;
  bool regularized_ = false;
};

/// c(i, j, k) = c^i_{jk}(u).
Tensor3 structure_constants_at(const FrobeniusData& data, const VectorQ& u);
/// d3F(i, j, k) = d_i d_j d_k F(u).
Tensor3 third_deriv_potential_at(const FrobeniusData& data, const VectorQ& u);
/// dc(m, i, j, k) = d_m c^i_{jk}(u).
Tensor4 d_structure_constants_at(const FrobeniusData& data, const VectorQ& u);

/// Floating evaluation of c^i_{jk}, flattened as (i*n + j)*n + k.
std::vector<double> structure_constants_double(const FrobeniusData& data, std::span<const double> u);

// Tensor-level identities; the *_at functions below evaluate and delegate.
bool potentiality_holds(const MatrixQ& eta, const Tensor3& c, const Tensor3& d3f);
bool associativity_holds(const Tensor3& c);
/// g^{lm} c^j_{hm} = g^{jm} c^l_{hm} with g the contravariant metric.
bool invariance_holds(const MatrixQ& g, const Tensor3& c);
bool nabla_c_symmetry_holds(const Tensor4& dc);
bool hertling_manin_holds(const Tensor3& c, const Tensor4& dc);

bool check_potentiality_at(const FrobeniusData& data, const VectorQ& u);
bool check_associativity_at(const FrobeniusData& data, const VectorQ& u);
bool check_invariance_at(const FrobeniusData& data, const VectorQ& u);
bool check_nabla_c_symmetry_at(const FrobeniusData& data, const VectorQ& u);
bool check_hertling_manin_at(const FrobeniusData& data, const VectorQ& u);
/// c^i_{jk}(u) u^k / mu = delta^i_j. Throws InputError for mu = 0.
bool check_unity_at(const FrobeniusData& data, const VectorQ& u, const Rational& mu);

/// sum_a r_a (P^{-1} v_a) v_a^T over the covectors.
MatrixQ endomorphism_sum(const FrobeniusData& data);
/// mu with endomorphism_sum = mu Id, if it is a multiple of the identity.
std::optional<Rational> unity_scale(const FrobeniusData& data);

/// Integer coordinates in [-9, 9] off every hyperplane; 100 attempts, then
/// InputError.
VectorQ sample_admissible_point(const FrobeniusData& data, Rng& rng);

struct RegularizedFamily {
  std::vector<std::string> parameters;  // remaining free parameters
  ParamMatrix metric;                   // limit of G / eps^order
  int order = 0;
  CovectorSystem survivors;             // radicands at eps = 0
  std::vector<std::string> dropped;
};

/// Substitutes `parameter` := `value` (an expression in eps and the other
/// parameters) and extracts the eps -> 0 limit of G / eps^k with k the
/// minimal entry valuation. Covectors whose radicand vanishes at eps = 0 are
/// dropped. Throws InputError when G does not degenerate along the path and
/// SingularMatrixError when the limit is singular.
RegularizedFamily regularize(const CovectorSystem& family, const std::string& parameter,
                             const ParamFunction& value);
/// One-parameter family approached along t = t0 + eps.
RegularizedFamily regularize(const CovectorSystem& family, const Rational& t0);

FrobeniusData instantiate_regularized(const RegularizedFamily& reg, const Bindings& values);

inline const std::string kPathVariable = "eps";

}  // namespace veesys
