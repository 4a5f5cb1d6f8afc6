#include "veesys/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <utility>

#include "veesys/error.hpp"

namespace veesys {

namespace {

fftw_complex* as_complex(void* p) { return static_cast<fftw_complex*>(p); }

}  // namespace

Spectral::Spectral(std::size_t n) : n_(n) {
  if (n < 8 || (n & (n - 1)) != 0) throw InputError("grid size must be a power of two >= 8");
  real_ = fftw_alloc_real(n);
  spec_ = fftw_alloc_complex(n / 2 + 1);
  const int ni = static_cast<int>(n);
  plan_forward_ = fftw_plan_dft_r2c_1d(ni, real_, as_complex(spec_), FFTW_ESTIMATE);
  plan_backward_ = fftw_plan_dft_c2r_1d(ni, as_complex(spec_), real_, FFTW_ESTIMATE);
}

void Spectral::release() {
  if (plan_forward_) fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
  if (plan_backward_) fftw_destroy_plan(static_cast<fftw_plan>(plan_backward_));
  if (real_) fftw_free(real_);
  if (spec_) fftw_free(spec_);
  plan_forward_ = plan_backward_ = nullptr;
  real_ = nullptr;
  spec_ = nullptr;
}

Spectral::~Spectral() { release(); }

Spectral::Spectral(Spectral&& o) noexcept
    : n_(o.n_),
      real_(std::exchange(o.real_, nullptr)),
      spec_(std::exchange(o.spec_, nullptr)),
      plan_forward_(std::exchange(o.plan_forward_, nullptr)),
      plan_backward_(std::exchange(o.plan_backward_, nullptr)) {}

Spectral& Spectral::operator=(Spectral&& o) noexcept {
  if (this != &o) {
    release();
    n_ = o.n_;
    real_ = std::exchange(o.real_, nullptr);
    spec_ = std::exchange(o.spec_, nullptr);
    plan_forward_ = std::exchange(o.plan_forward_, nullptr);
    plan_backward_ = std::exchange(o.plan_backward_, nullptr);
  }
  return *this;
}

double Spectral::x(std::size_t k) const { return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_); }

void Spectral::forward(std::span<const double> f) {
  if (f.size() != n_) throw InputError("grid function has the wrong length");
  std::copy(f.begin(), f.end(), real_);
  fftw_execute(static_cast<fftw_plan>(plan_forward_));
}

std::vector<double> Spectral::backward() {
  fftw_execute(static_cast<fftw_plan>(plan_backward_));
  std::vector<double> out(real_, real_ + n_);
  for (auto& v : out) v /= static_cast<double>(n_);
  return out;
}

std::vector<double> Spectral::derivative(std::span<const double> f) {
  forward(f);
  fftw_complex* s = as_complex(spec_);
  const std::size_t half = n_ / 2;
  for (std::size_t k = 0; k <= half; ++k) {
    const double kk = (k == half) ? 0.0 : static_cast<double>(k);
    const double re = s[k][0], im = s[k][1];
    s[k][0] = -kk * im;
    s[k][1] = kk * re;
  }
  return backward();
}

std::vector<double> Spectral::antiderivative(std::span<const double> f) {
  forward(f);
  fftw_complex* s = as_complex(spec_);
  const std::size_t half = n_ / 2;
  s[0][0] = s[0][1] = 0.0;
  s[half][0] = s[half][1] = 0.0;
  for (std::size_t k = 1; k < half; ++k) {
    const double kk = static_cast<double>(k);
    const double re = s[k][0], im = s[k][1];
    s[k][0] = im / kk;
    s[k][1] = -re / kk;
  }
  return backward();
}

double Spectral::mean(std::span<const double> f) {
  double acc = 0;
  for (double v : f) acc += v;
  return f.empty() ? 0.0 : acc / static_cast<double>(f.size());
}

double Spectral::integral(std::span<const double> f) { return 2.0 * std::numbers::pi * mean(f); }

LoopGrid::LoopGrid(const LoopSpec& spec, std::size_t n_points)
    : spec_(spec), points_(n_points), dim_(spec.dimension) {
  if (spec.coords.size() != dim_) throw InputError("loop specification must describe every coordinate");
  std::vector<bool> seen(dim_, false);
  for (const auto& c : spec.coords) {
    if (c.coord >= dim_ || seen[c.coord]) throw InputError("loop specification has a bad or repeated coordinate");
    seen[c.coord] = true;
  }
  values_.assign(points_ * dim_, 0.0);
  derivs_.assign(points_ * dim_, 0.0);
  for (std::size_t p = 0; p < points_; ++p) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(points_);
    for (const auto& c : spec.coords) {
      double u = c.mean.get_d(), ux = 0.0;
      for (std::size_t k = 1; k <= c.cos.size(); ++k) {
        u += c.cos[k - 1] * std::cos(k * x);
        ux -= static_cast<double>(k) * c.cos[k - 1] * std::sin(k * x);
      }
      for (std::size_t k = 1; k <= c.sin.size(); ++k) {
        u += c.sin[k - 1] * std::sin(k * x);
        ux += static_cast<double>(k) * c.sin[k - 1] * std::cos(k * x);
      }
      values_[p * dim_ + c.coord] = u;
      derivs_[p * dim_ + c.coord] = ux;
    }
  }
}

std::vector<double> component(const GridField& f, std::size_t dim, std::size_t i) {
  std::vector<double> out(f.size() / dim);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f[k * dim + i];
  return out;
}

}  // namespace veesys
