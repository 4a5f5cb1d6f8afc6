#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "veesys/error.hpp"
#include "veesys/frobenius.hpp"
#include "veesys/hamiltonian.hpp"
#include "veesys/matrix.hpp"
#include "veesys/mpoly.hpp"
#include "veesys/spectral.hpp"

namespace veesys {

/// Flat F-manifold with constant metric and polynomial potential;
/// c^i_{jk} = eta^{il} d_l d_j d_k F as polynomials.
struct PolyFrobenius {
  std::string name;
  std::size_t n = 0;
  MatrixQ eta, eta_inv;
  MPoly potential;
  std::vector<MPoly> c;  // (i*n + j)*n + k

  const MPoly& structure(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * n + j) * n + k]; }
  FrobeniusData frobenius() const { return FrobeniusData::from_potential(eta, potential); }
};

/// Builds the polynomial structure and verifies WDVV (commuting
/// multiplication matrices) on the grid {0..D}^n, D the degree of the
/// commutator entries. Throws InputError if it fails.
PolyFrobenius make_poly_frobenius(std::string name, const MatrixQ& eta, const MPoly& potential);

/// "kdv2d", "trivial1d", "a3". Throws InputError for unknown names.
PolyFrobenius builtin_poly_frobenius(const std::string& name);
std::vector<std::string> poly_frobenius_names();

struct HierarchyLevel {
  std::size_t p = 0;  // family index, 0-based
  int alpha = -1;
  MPoly density;
  std::vector<MPoly> field;  // X = eta^{-1} dh
};

class CompatibilityError : public Error {
 public:
  CompatibilityError(std::size_t i, std::size_t j, const std::string& what)
      : Error(what), i_(i), j_(j) {}
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_, j_;
};

/// h_{[p,-1]} = eta_{pl} u^l.
HierarchyLevel base_level(const PolyFrobenius& data, std::size_t p);

/// Hessian H_ij = c^l_{ij} d_l h of the next density.
std::vector<MPoly> next_hessian(const PolyFrobenius& data, const HierarchyLevel& level);

/// Unique h with d_i d_j h = H_ij, h(0) = 0, dh(0) = 0. Throws
/// CompatibilityError when H is not symmetric or not closed.
MPoly integrate_hessian(const std::vector<MPoly>& hessian, std::size_t n);

HierarchyLevel recursion_step(const PolyFrobenius& data, const HierarchyLevel& level);

/// Levels -1..max_alpha of family p.
std::vector<HierarchyLevel> build_family(const PolyFrobenius& data, std::size_t p, int max_alpha);

struct RecursionFailure {
  std::size_t p = 0;
  int alpha = 0;
  std::size_t i = 0, j = 0;
  MPoly::Exponents monomial;
  Rational expected, actual;
  std::string kind;  // "recursion", "closure" or "base"
};

struct RecursionReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<RecursionFailure> failures;
};

/// Re-differentiates each density: d_i d_j h_{a+1} = c^l_{ij} d_l h_a
/// coefficient by coefficient, eta X = dh, and the base case.
RecursionReport verify_recursion(const PolyFrobenius& data, const std::vector<HierarchyLevel>& family);

/// Gradient dh evaluated along the loop, point-major.
GridField gradient_on_loop(const MPoly& h, const LoopGrid& loop);

/// sup |c^j_{pq} u_x^q d_j h_{a-1} - d_x (d_p h_a)| over points and p, for
/// the consecutive pair (lower, upper = lower + 1).
double local_identity_residual(const PolyFrobenius& data, const HierarchyLevel& lower, const HierarchyLevel& upper,
                               const LoopGrid& loop);

/// sup |P1 dH_upper - Q dH_lower| with P1 = eta^{-1} d_x and Q the non-local
/// operator; the inverse derivative is anchored to d_p h_anchor at grid point 0.
double lenard_magri_residual(const PolyFrobenius& data, const NonlocalOperator& q, const HierarchyLevel& upper,
                             const HierarchyLevel& lower, const HierarchyLevel& anchor, const LoopGrid& loop,
                             double mean_tolerance = 1e-9);

/// |int dh_a^T eta^{-1} d_x dh_b dx|.
double involutivity_residual(const PolyFrobenius& data, const MPoly& a, const MPoly& b, const LoopGrid& loop);

}  // namespace veesys
