#include <doctest.h>

#include <cmath>

#include "jacobi/levy.hpp"
#include "jacobi/quadrature.hpp"
#include "jacobi/semigroup.hpp"
#include "jacobi/specfun.hpp"

using namespace jacobi;

TEST_CASE("stationary density") {
  JacobiParams uniform(0.0, 0.0);
  CHECK(stationary_density(0.3, uniform) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(stationary_density(1.0, uniform), std::domain_error);

  JacobiParams p(0.5, 1.2);
  double mass = integrate_tanh_sinh(
      [&](double y) { return stationary_density(y, p); }, -1.0, 1.0, 1e-13);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

  JacobiParams sym(0.7, 0.7);
  CHECK(stationary_density(0.4, sym) ==
        doctest::Approx(stationary_density(-0.4, sym)).epsilon(1e-14));
}

TEST_CASE("spectral density: long-time limit, normalization, symmetry") {
  JacobiParams p(0.5, 0.5);
  SeriesControl ctrl;
  for (double y : {-0.6, 0.0, 0.7}) {
    double pt = density_spectral(KernelPoint(40.0, 0.2, y), p, ctrl);
    CHECK(std::abs(pt - stationary_density(y, p)) < 1e-8);
  }

  JacobiParams p2(0.5, 0.8);
  double mass = integrate_tanh_sinh(
      [&](double y) {
        return density_spectral(KernelPoint(1.0, 0.3, y), p2, ctrl);
      },
      -1.0, 1.0, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  // detailed balance W(x) p(x,y) = W(y) p(y,x)
  for (auto [x, y] : {std::pair{0.2, -0.4}, {0.6, 0.1}, {-0.3, -0.7}}) {
    double lhs = stationary_density(x, p2) *
                 density_spectral(KernelPoint(1.0, x, y), p2, ctrl);
    double rhs = stationary_density(y, p2) *
                 density_spectral(KernelPoint(1.0, y, x), p2, ctrl);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("poisson kernel closed form vs direct sum") {
  JacobiParams p(0.3, 0.3);
  SeriesControl ctrl;
  double r = 0.5, x = 0.2, y = -0.4;
  double series = poisson_kernel_series(r, x, y, p, 60);
  double closed = poisson_kernel(r, x, y, p, ctrl);
  CHECK(closed == doctest::Approx(series).epsilon(1e-8));

  // r -> 0 leaves the n=0 term
  CHECK(poisson_kernel(1e-12, 0.3, 0.5, p, ctrl) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Bailey ultraspherical reduction agrees
  double bailey = poisson_kernel_ultraspherical(r, x, y, 0.3, ctrl);
  CHECK(bailey == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("subordinated kernel identities") {
  JacobiParams p(0.5, 0.8);
  SeriesControl ctrl;
  double t = 1.0, x = 0.1, y = 0.5;
  double q = subordinated_kernel(t, x, y, p, ctrl);

  CHECK(q == doctest::Approx(stationary_density(y, p) *
                             poisson_kernel(std::exp(-t), x, y, p, ctrl))
                 .epsilon(1e-9));

  // q_t(x,y) = int p_s(x,y) nu_t(s) ds with the linearizing IG parameters
  IGParams ig(std::sqrt(2.0) * p.gamma(), 1.0 / std::sqrt(2.0), t);
  double quad = integrate_zero_inf(
      [&](double s) {
        if (s < 0.005) return 0.0;  // spectral sum needs s not too small
        return density_spectral(KernelPoint(s, x, y), p, ctrl) *
               ig_density(s, ig);
      },
      1e-10);
  CHECK(quad == doctest::Approx(q).epsilon(1e-5));

  double mass = integrate_tanh_sinh(
      [&](double yy) { return subordinated_kernel(t, x, yy, p, ctrl); }, -1.0,
      1.0, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("convolution route agrees with spectral route") {
  SeriesControl ctrl;
  JacobiParams p(0.5, 0.8);
  {
    KernelPoint pt(1.0, 0.2, -0.3);
    double conv = density_convolution(pt, p, ctrl);
    double spec = density_spectral(pt, p, ctrl);
    CHECK(conv == doctest::Approx(spec).epsilon(1e-6));
  }
  {
    // small t: convolution route is the reference; spectral still works at 0.2
    KernelPoint pt(0.2, 0.2, -0.3);
    double conv = density_convolution(pt, p, ctrl);
    double spec = density_spectral(pt, p, ctrl);
    CHECK(conv == doctest::Approx(spec).epsilon(1e-5));
  }
  for (double x = -0.8; x <= 0.81; x += 0.4) {
    for (double y = -0.8; y <= 0.81; y += 0.4) {
      CHECK(density_convolution(KernelPoint(0.5, x, y), p, ctrl) > 0.0);
    }
  }
}

TEST_CASE("ultraspherical route agrees with the general routes") {
  SeriesControl ctrl;
  double alpha = 0.5;
  JacobiParams p(alpha, alpha);
  KernelPoint pt(1.0, 0.3, 0.1);
  double ultra = density_ultraspherical(pt, alpha, ctrl);
  CHECK(ultra == doctest::Approx(density_spectral(pt, p, ctrl)).epsilon(1e-6));
  CHECK(ultra ==
        doctest::Approx(density_convolution(pt, p, ctrl)).epsilon(1e-6));
}

TEST_CASE("from-zero density") {
  SeriesControl ctrl;
  double alpha = 0.5;
  double t = 1.0;
  double mass = integrate_tanh_sinh(
      [&](double y) { return density_from_zero(t, y, alpha, ctrl); }, -1.0,
      1.0, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));

  // Y_t = X_{t/2}: matches the ultraspherical kernel at x=0, clock t/2
  for (double y : {-0.5, 0.2, 0.6}) {
    double lhs = density_from_zero(t, y, alpha, ctrl);
    double rhs = density_ultraspherical(KernelPoint(t / 2.0, 0.0, y), alpha,
                                        ctrl);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    CHECK(lhs == doctest::Approx(density_from_zero(t, -y, alpha, ctrl))
                     .epsilon(1e-12));
  }
}

TEST_CASE("Chapman-Kolmogorov") {
  SeriesControl ctrl;
  JacobiParams p(0.5, 0.8);
  double s = 0.5, t = 0.7, x = 0.2, y = -0.1;
  double conv = integrate_tanh_sinh(
      [&](double z) {
        return density_spectral(KernelPoint(s, x, z), p, ctrl) *
               density_spectral(KernelPoint(t, z, y), p, ctrl);
      },
      -1.0, 1.0, 1e-11);
  double direct = density_spectral(KernelPoint(s + t, x, y), p, ctrl);
  CHECK(conv == doctest::Approx(direct).epsilon(1e-5));
}
