#include <cmath>
#include <random>

#include <doctest.h>

#include "relheat/core.hpp"

using namespace relheat;

TEST_CASE("flux hand values") {
  ModelParams unit;
  CHECK(core::flux(1.0, Vec(0.0), unit)[0] == 0.0);
  // u=3, grad=4, c=1: 12 / sqrt(9+16) = 2.4
  CHECK(core::flux(3.0, Vec(4.0), unit)[0] == doctest::Approx(2.4).epsilon(1e-15));
  // saturation: |F| -> c*u as |grad| -> inf
  CHECK(core::flux(2.0, Vec(1e9), unit)[0] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("flux vacuum extension and errors") {
  ModelParams unit;
  const Vec z = core::flux(0.0, Vec(0.0), unit);
  CHECK(z[0] == 0.0);
  const Vec z2 = core::flux(0.0, Vec(5.0, -2.0), unit);
  CHECK(z2[0] == 0.0);
  CHECK(z2[1] == 0.0);
  // eps_guard = 0 still yields the zero vector at the degenerate point
  ModelParams no_guard;
  no_guard.eps_guard = 0.0;
  CHECK(core::flux(0.0, Vec(0.0), no_guard)[0] == 0.0);

  CHECK_THROWS_AS(core::flux(std::nan(""), Vec(1.0), unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(core::flux(-1.0, Vec(1.0), unit), std::invalid_argument);
}

TEST_CASE("flux bound |F| <= c u over random states") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (double c : {0.5, 1.0, 10.0}) {
    ModelParams params;
    params.c = c;
    for (int i = 0; i < 10000; ++i) {
      const double u = std::pow(10.0, -4.0 + 6.0 * uni(rng));
      const double m = std::pow(10.0, -4.0 + 10.0 * uni(rng));
      const double ang = 2.0 * M_PI * uni(rng);
      const Vec g = i % 2 ? Vec(m * std::cos(ang), m * std::sin(ang))
                          : Vec(m - 0.5 * m * 2.0 * uni(rng));
      CHECK(core::flux(u, g, params).norm() <= c * u * (1.0 + 1e-14) + 1e-300);
    }
  }
}

TEST_CASE("q operator fixtures and reductions") {
  ModelParams unit;
  CHECK(core::q_operator(0.0, Vec(0.0), SymMat(0.0), unit) == 0.0);
  // linear w = a x: Q = |a|^2
  CHECK(core::q_operator(0.3, Vec(0.7), SymMat(0.0), unit) ==
        doctest::Approx(0.49).epsilon(1e-15));
  CHECK(core::q_operator(0.0, Vec(0.3, -0.4), SymMat(0.0, 0.0, 0.0), unit) ==
        doctest::Approx(0.25).epsilon(1e-15));

  // 1D algebraic reduction: Q = m / (1 + p^2) + p^2 at c = 1
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double p = uni(rng), m = uni(rng);
    const double expect = m / (1.0 + p * p) + p * p;
    CHECK(core::q_operator(uni(rng), Vec(p), SymMat(m), unit) ==
          doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("q is independent of the w value itself") {
  ModelParams params;
  params.c = 2.5;
  const Vec p(0.4, -1.1);
  const SymMat h(0.3, -0.2, 0.9);
  const double q0 = core::q_operator(0.0, p, h, params);
  CHECK(core::q_operator(123.0, p, h, params) == q0);
  CHECK(core::q_operator(-55.5, p, h, params) == q0);
}

TEST_CASE("qtilde fixtures and sign equivalence") {
  ModelParams unit;
  CHECK(core::qtilde_operator(Vec(0.0), SymMat(0.0), unit) == 0.0);
  CHECK(core::qtilde_operator(Vec(1.0), SymMat(0.0), unit) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec p(uni(rng), uni(rng));
    const SymMat h(uni(rng), uni(rng), uni(rng));
    const double q = core::q_operator(0.0, p, h, unit);
    const double qt = core::qtilde_operator(p, h, unit);
    if (q > 0.0) CHECK(qt > 0.0);
    if (q < 0.0) CHECK(qt < 0.0);
    if (q == 0.0) CHECK(qt == 0.0);
  }
}

TEST_CASE("ellipticity eigenvalues") {
  ModelParams unit;
  {
    const auto [lmin, lmax] = core::ellipticity_eigenvalues(Vec(0.0, 0.0), unit);
    CHECK(lmin == 1.0);
    CHECK(lmax == 1.0);
  }
  {
    const auto [lmin, lmax] = core::ellipticity_eigenvalues(Vec(1.0, 0.0), unit);
    CHECK(lmin == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lmax == 1.0);
  }
  {
    const auto [lmin, lmax] = core::ellipticity_eigenvalues(Vec(0.0, 3.0), unit);
    CHECK(lmin == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(lmax == 1.0);
  }
  // 1D convention: the principal part is the single entry lambda_1
  {
    const auto [lmin, lmax] = core::ellipticity_eigenvalues(Vec(2.0), unit);
    CHECK(lmin == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(lmax == lmin);
  }
  // degeneration as |p| grows; positivity throughout
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double prev = 1.0;
  for (double mag : {1.0, 10.0, 100.0, 1e4, 1e8}) {
    const auto [lmin, lmax] = core::ellipticity_eigenvalues(
        Vec(mag * uni(rng), mag), unit);
    CHECK(lmin > 0.0);
    CHECK(lmin < prev);
    CHECK(lmax == 1.0);
    prev = lmin;
  }
}

TEST_CASE("log transform") {
  CHECK(core::u_to_w(1.0) == 0.0);
  CHECK(core::u_to_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(core::u_to_w(0.0), std::domain_error);
  CHECK_THROWS_AS(core::u_to_w(-2.0), std::domain_error);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-30.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = uni(rng);
    CHECK(core::u_to_w(core::w_to_u(w)) == doctest::Approx(w).epsilon(1e-14));
  }
}

TEST_CASE("model parameter guards") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.c = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.c = 1.0;
  p.eps_guard = 1e-9;  // above the allowed floor ceiling
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.eps_guard = 0.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("residual classification") {
  using C = Classification;
  CHECK(core::classify_residual(0.5, 1e-8) == C::Subharmonic);
  CHECK(core::classify_residual(0.0, 1e-8) == C::Harmonic);
  CHECK(core::classify_residual(-1e-9, 1e-8) == C::Harmonic);
  CHECK(core::classify_residual(-0.5, 1e-8) == C::Superharmonic);
  CHECK(core::classify_residual(std::nan(""), 1e-8) == C::Indeterminate);
  CHECK_THROWS_AS(core::classify_residual(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("divergence identity: flux route vs transformed route") {
  // div F(e^w) = e^w (1 + c^-2 |Dw|^2)^(-1/2) Q_c w with analytic inputs
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (double c : {0.5, 1.0, 4.0}) {
    ModelParams params;
    params.c = c;
    for (int i = 0; i < 400; ++i) {
      const double w = uni(rng);
      const Vec dw(uni(rng), uni(rng));
      const SymMat hw(uni(rng), uni(rng), uni(rng));
      const double u = std::exp(w);
      const Vec du(u * dw[0], u * dw[1]);
      const SymMat hu(u * (dw[0] * dw[0] + hw.xx), u * (dw[0] * dw[1] + hw.xy),
                      u * (dw[1] * dw[1] + hw.yy));
      const double lhs = core::flux_divergence(u, du, hu, params);
      const double rhs = u / std::sqrt(1.0 + params.inv_c2() * dw.norm2()) *
                         core::q_operator(w, dw, hw, params);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}
