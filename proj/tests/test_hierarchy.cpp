#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "veesys/error.hpp"
#include "veesys/hierarchy.hpp"
#include "veesys/rng.hpp"

using namespace veesys;
using oracle::q;

namespace {

MPoly u(std::size_t n, std::size_t i) { return MPoly::variable(n, i); }

// c^l_ij straight from the potential.
Rational c_oracle(const PolyFrobenius& d, std::size_t l, std::size_t i, std::size_t j, const VectorQ& pt) {
  Rational s = 0;
  for (std::size_t m = 0; m < d.n; ++m)
    s += d.eta_inv(l, m) * d.potential.derivative(m).derivative(i).derivative(j).evaluate(std::span<const Rational>(pt));
  return s;
}

// d_i d_j h_{a+1} = c^l_ij d_l h_a at random rational points.
bool recursion_oracle(const PolyFrobenius& d, const MPoly& lower, const MPoly& upper, Rng& rng) {
  for (int trial = 0; trial < 10; ++trial) {
    VectorQ pt(d.n);
    for (auto& x : pt) x = rng.small_rational(7, 3);
    const std::span<const Rational> sp(pt);
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = 0; j < d.n; ++j) {
        Rational rhs = 0;
        for (std::size_t l = 0; l < d.n; ++l) rhs += c_oracle(d, l, i, j, pt) * lower.derivative(l).evaluate(sp);
        if (upper.derivative(i).derivative(j).evaluate(sp) != rhs) return false;
      }
  }
  return true;
}

LoopSpec small_loop(const PolyFrobenius& d, Rng& rng, std::size_t modes = 3) {
  LoopOptions opt;
  opt.modes = modes;
  opt.box = 0.5;
  opt.spread = 0.4;
  return random_loop(d.frobenius(), rng, opt);
}

}  // namespace

TEST_CASE("builtin polynomial structures") {
  const auto k = builtin_poly_frobenius("kdv2d");
  CHECK(k.n == 2);
  CHECK(k.eta == MatrixQ{{0, 1}, {1, 0}});
  const MPoly u1 = u(2, 0), u2 = u(2, 1);
  CHECK(k.structure(0, 0, 0) == MPoly::constant(2, 1));
  CHECK(k.structure(1, 0, 1) == MPoly::constant(2, 1));
  CHECK(k.structure(1, 1, 0) == MPoly::constant(2, 1));
  CHECK(k.structure(0, 1, 1) == u2);
  CHECK(k.structure(1, 1, 1).is_zero());
  CHECK(k.structure(0, 0, 1).is_zero());

  const auto t = builtin_poly_frobenius("trivial1d");
  CHECK(t.structure(0, 0, 0) == MPoly::constant(1, 1));

  Rng rng(3);
  for (const auto& name : poly_frobenius_names()) {
    const auto d = builtin_poly_frobenius(name);
    const auto fd = d.frobenius();
    for (int trial = 0; trial < 10; ++trial) {
      VectorQ pt(d.n);
      for (auto& x : pt) x = rng.small_rational(9, 4);
      CHECK(check_associativity_at(fd, pt));
      CHECK(check_potentiality_at(fd, pt));
      CHECK(check_invariance_at(fd, pt));
      CHECK(check_nabla_c_symmetry_at(fd, pt));
      const auto c = structure_constants_at(fd, pt);
      for (std::size_t l = 0; l < d.n; ++l)
        for (std::size_t i = 0; i < d.n; ++i)
          for (std::size_t j = 0; j < d.n; ++j) {
            CHECK(c(l, i, j) == c_oracle(d, l, i, j, pt));
            CHECK(c(l, i, j) == d.structure(l, i, j).evaluate(std::span<const Rational>(pt)));
          }
    }
  }
  CHECK_THROWS_AS(builtin_poly_frobenius("nope"), InputError);
}

TEST_CASE("tampered potential fails WDVV") {
  const MPoly u1 = u(2, 0), u2 = u(2, 1);
  const MPoly bad = u1 * u1 * u2 * q(1, 2) + u2.pow(4) * q(1, 24) + u1.pow(4) * q(1, 24);
  CHECK_THROWS_AS(make_poly_frobenius("bad", MatrixQ{{0, 1}, {1, 0}}, bad), InputError);
  const MPoly ok = u1 * u1 * u2 * q(1, 2) + u2.pow(5);
  CHECK_NOTHROW(make_poly_frobenius("ok", MatrixQ{{0, 1}, {1, 0}}, ok));
  CHECK_THROWS_AS(make_poly_frobenius("shape", MatrixQ{{1}}, ok), InputError);
}

TEST_CASE("kdv2d first densities") {
  const auto k = builtin_poly_frobenius("kdv2d");
  const MPoly u1 = u(2, 0), u2 = u(2, 1);
  const auto b1 = base_level(k, 1);
  CHECK(b1.density == u1);
  const auto l1 = recursion_step(k, b1);
  CHECK(l1.alpha == 0);
  CHECK(l1.density == u1 * u1 * q(1, 2) + u2.pow(3) * q(1, 6));

  const auto b0 = base_level(k, 0);
  CHECK(b0.density == u2);
  const auto l0 = recursion_step(k, b0);
  CHECK(l0.density == u1 * u2);
  // X = eta^{-1} dh
  CHECK(l0.field == std::vector<MPoly>{u1, u2});
  CHECK_THROWS_AS(base_level(k, 2), InputError);
}

TEST_CASE("recursion matches the independent oracle") {
  Rng rng(5);
  for (const auto& name : poly_frobenius_names()) {
    const auto d = builtin_poly_frobenius(name);
    for (std::size_t p = 0; p < d.n; ++p) {
      const auto fam = build_family(d, p, name == "a3" ? 3 : 5);
      CHECK(fam.front().alpha == -1);
      for (std::size_t a = 0; a + 1 < fam.size(); ++a) CHECK(recursion_oracle(d, fam[a].density, fam[a + 1].density, rng));
      const auto report = verify_recursion(d, fam);
      CHECK(report.ok);
      CHECK(report.checked > 0);
      for (const auto& lv : fam) {
        CHECK(lv.density.constant_term() == 0);
        if (lv.alpha >= 0)
          for (std::size_t i = 0; i < d.n; ++i) CHECK(lv.density.derivative(i).constant_term() == 0);
      }
    }
  }
}

TEST_CASE("hessian integration") {
  const std::size_t n = 2;
  const MPoly x = u(n, 0), y = u(n, 1);
  // h = x^3 y + y^4: H = [[6xy, 3x^2], [3x^2, 12 y^2]]
  const MPoly h = x.pow(3) * y + y.pow(4);
  CHECK(integrate_hessian({h.derivative(0).derivative(0), h.derivative(0).derivative(1), h.derivative(1).derivative(0),
                           h.derivative(1).derivative(1)},
                          n) == h);
  try {
    integrate_hessian({x, y, x, y}, n);
    FAIL("expected incompatibility");
  } catch (const CompatibilityError& e) {
    CHECK(e.i() != e.j());
  }
  // symmetric but not closed
  CHECK_THROWS_AS(integrate_hessian({y, MPoly(n), MPoly(n), MPoly(n)}, n), CompatibilityError);
}

TEST_CASE("non-invariant product breaks compatibility") {
  auto k = builtin_poly_frobenius("kdv2d");
  k.c[(0 * 2 + 0) * 2 + 1] += u(2, 0);
  CHECK_THROWS_AS(recursion_step(k, base_level(k, 1)), CompatibilityError);
}

TEST_CASE("corrupted density is reported with a witness") {
  const auto k = builtin_poly_frobenius("kdv2d");
  auto fam = build_family(k, 1, 3);
  fam[3].density += u(2, 0).pow(2) * u(2, 1) * q(1, 7);
  const auto r = verify_recursion(k, fam);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.failures.empty());
  const auto& w = r.failures.front();
  CHECK(w.alpha >= 1);
  CHECK(w.expected != w.actual);
  CHECK(w.monomial.size() == 2);

  auto fam2 = build_family(k, 0, 1);
  fam2[0].density += u(2, 0);
  const auto r2 = verify_recursion(k, fam2);
  CHECK_FALSE(r2.ok);
  bool saw_base = false;
  for (const auto& f : r2.failures) saw_base = saw_base || f.kind == "base";
  CHECK(saw_base);
}

TEST_CASE("gradient on loop") {
  Rng rng(7);
  const auto k = builtin_poly_frobenius("kdv2d");
  const LoopGrid loop(small_loop(k, rng), 32);
  const MPoly h = u(2, 0).pow(2) * u(2, 1);
  const auto g = gradient_on_loop(h, loop);
  for (std::size_t p = 0; p < 32; ++p) {
    const double a = loop.u(p)[0], b = loop.u(p)[1];
    CHECK(g[p * 2] == doctest::Approx(2 * a * b));
    CHECK(g[p * 2 + 1] == doctest::Approx(a * a));
  }
}

TEST_CASE("pointwise identity, Lenard-Magri and involutivity on loops") {
  Rng rng(11);
  const auto k = builtin_poly_frobenius("kdv2d");
  const NonlocalOperator qop(k.frobenius());
  std::vector<std::vector<HierarchyLevel>> fams{build_family(k, 0, 5), build_family(k, 1, 5)};
  for (int trial = 0; trial < 2; ++trial) {
    const LoopGrid loop(small_loop(k, rng), 64);
    for (const auto& fam : fams) {
      for (std::size_t a = 0; a + 1 < fam.size(); ++a) CHECK(local_identity_residual(k, fam[a], fam[a + 1], loop) < 1e-9);
      for (std::size_t a = 1; a + 1 < fam.size(); ++a)
        CHECK(lenard_magri_residual(k, qop, fam[a + 1], fam[a - 1], fam[a], loop) < 1e-8);
    }
    for (const auto& fa : fams)
      for (const auto& fb : fams)
        for (const auto& la : fa)
          for (const auto& lb : fb) CHECK(involutivity_residual(k, la.density, lb.density, loop) < 1e-8);
  }
}

TEST_CASE("constant loop gives exact zeros") {
  const auto k = builtin_poly_frobenius("kdv2d");
  LoopSpec spec;
  spec.dimension = 2;
  spec.coords = {{0, q(1, 3), {}, {}}, {1, q(-1, 2), {}, {}}};
  const LoopGrid loop(spec, 16);
  const auto fam = build_family(k, 1, 3);
  CHECK(local_identity_residual(k, fam[1], fam[2], loop) == 0);
  const NonlocalOperator qop(k.frobenius());
  // alpha = -1 densities are Casimirs of the local bracket
  CHECK(lenard_magri_residual(k, qop, fam[0], fam[0], fam[0], loop) == 0);
}

TEST_CASE("residual detectors") {
  Rng rng(13);
  const auto k = builtin_poly_frobenius("kdv2d");
  const NonlocalOperator qop(k.frobenius());
  const LoopGrid loop(small_loop(k, rng), 64);
  const auto fam = build_family(k, 1, 5);

  // Casimir side
  CHECK(involutivity_residual(k, fam[0].density, fam[3].density, loop) < 1e-10);

  // wrong parity
  CHECK(lenard_magri_residual(k, qop, fam[3], fam[1], fam[3], loop) > 1e-4);
  CHECK(lenard_magri_residual(k, qop, fam[4], fam[1], fam[2], loop) > 1e-4);

  // corrupted density
  auto bad = fam[3];
  bad.density += u(2, 0).pow(3) * q(1, 5);
  CHECK(local_identity_residual(k, fam[2], bad, loop) > 1e-3);

  // same functional: exactly the skew pairing
  CHECK(involutivity_residual(k, fam[4].density, fam[4].density, loop) < 1e-10);

  // a functional outside the hierarchy
  const MPoly other = u(2, 0).pow(3) * u(2, 1).pow(2);
  LoopOptions wide;
  wide.spread = 1.5;
  const LoopGrid big(random_loop(k.frobenius(), rng, wide), 64);
  CHECK(involutivity_residual(k, fam[3].density, other, big) > 1e-3);
  CHECK(involutivity_residual(k, fam[3].density, fam[4].density, big) < 1e-8);
}

TEST_CASE("Lenard-Magri residual converges spectrally") {
  Rng rng(17);
  const auto k = builtin_poly_frobenius("kdv2d");
  const NonlocalOperator qop(k.frobenius());
  const auto fam = build_family(k, 1, 3);
  LoopOptions opt;
  opt.box = 0.5;
  opt.spread = 0.4;
  const auto spec = geometric_loop(k.frobenius(), rng, 0.6, 40, opt);
  const LoopGrid coarse(spec, 32), fine(spec, 128);
  const double rc = lenard_magri_residual(k, qop, fam[3], fam[1], fam[2], coarse, 1.0);
  const double rf = lenard_magri_residual(k, qop, fam[3], fam[1], fam[2], fine, 1.0);
  CHECK(rc > 0);
  CHECK(rf < 1e-8);
  CHECK(rc / std::max(rf, 1e-300) >= 1e4);
}
