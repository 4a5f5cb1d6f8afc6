#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "veesys/rational.hpp"

namespace veesys {

/// FFT-based derivative and zero-mean antiderivative of 2*pi-periodic grid
/// functions sampled at x_k = 2 pi k / N. Owns its FFT plans and workspace;
/// a single instance must not be used from several threads at once.
class Spectral {
 public:
  /// N must be a power of two, N >= 8.
  explicit Spectral(std::size_t n);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;
  Spectral(Spectral&& o) noexcept;
  Spectral& operator=(Spectral&& o) noexcept;

  std::size_t size() const { return n_; }
  double x(std::size_t k) const;

  std::vector<double> derivative(std::span<const double> f);
  /// Antiderivative of f - mean(f), normalized to zero mean.
  std::vector<double> antiderivative(std::span<const double> f);

  static double mean(std::span<const double> f);
  /// Trapezoidal (spectrally accurate) integral over one period.
  static double integral(std::span<const double> f);

 private:
  void forward(std::span<const double> f);
  std::vector<double> backward();
  void release();

  std::size_t n_ = 0;
  double* real_ = nullptr;
  void* spec_ = nullptr;  // fftw_complex[n/2 + 1]
  void* plan_forward_ = nullptr;
  void* plan_backward_ = nullptr;
};

/// u_coord(x) = mean + sum_k cos[k-1] cos(kx) + sin[k-1] sin(kx).
struct FourierCoordinate {
  std::size_t coord = 0;
  Rational mean;
  std::vector<double> cos;
  std::vector<double> sin;
};

struct LoopSpec {
  std::size_t dimension = 0;
  std::vector<FourierCoordinate> coords;  // one per coordinate
};

/// Periodic curve sampled on N points, with the exact derivative of the
/// Fourier description. Fields on the grid are stored point-major: f[k*n + i].
class LoopGrid {
 public:
  LoopGrid(const LoopSpec& spec, std::size_t n_points);

  std::size_t points() const { return points_; }
  std::size_t dimension() const { return dim_; }
  std::span<const double> u(std::size_t k) const { return {values_.data() + k * dim_, dim_}; }
  std::span<const double> ux(std::size_t k) const { return {derivs_.data() + k * dim_, dim_}; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& derivatives() const { return derivs_; }
  const LoopSpec& spec() const { return spec_; }

 private:
  LoopSpec spec_;
  std::size_t points_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
  std::vector<double> derivs_;
};

using GridField = std::vector<double>;

/// Component i of a point-major field as a contiguous series.
std::vector<double> component(const GridField& f, std::size_t dim, std::size_t i);

}  // namespace veesys
