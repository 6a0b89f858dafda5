#include <doctest.h>

#include <cmath>

#include "jacobi/levy.hpp"
#include "jacobi/quadrature.hpp"

using namespace jacobi;

TEST_CASE("ig_density normalizes and matches its Laplace transform") {
  IGParams ig(1.0, 1.0 / std::sqrt(2.0), 2.0);
  CHECK(ig_density(0.0, ig) == 0.0);
  CHECK(ig_density(-1.0, ig) == 0.0);

  double mass = integrate_zero_inf([&](double s) { return ig_density(s, ig); },
                                   1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  double u = 0.7;
  double lhs = integrate_zero_inf(
      [&](double s) { return std::exp(-u * s) * ig_density(s, ig); }, 1e-12);
  CHECK(lhs == doctest::Approx(ig_laplace(u, ig)).epsilon(1e-8));
}

TEST_CASE("ig_laplace closed form") {
  IGParams ig(0.8, 1.4, 1.1);
  CHECK(ig_laplace(0.0, ig) == 1.0);

  // delta = 1/sqrt(2), mu = sqrt(2) gamma linearizes the Jacobi eigenvalues
  double gamma = 0.9;
  IGParams lin(std::sqrt(2.0) * gamma, 1.0 / std::sqrt(2.0), 1.7);
  for (unsigned n = 0; n <= 6; ++n) {
    double lambda_n = (n + gamma) * (n + gamma) - gamma * gamma;
    CHECK(ig_laplace(lambda_n, lin) ==
          doctest::Approx(std::exp(-static_cast<double>(n) * lin.t))
              .epsilon(1e-12));
  }

  double prev = 2.0;
  for (double u = 0.0; u <= 5.0; u += 0.25) {
    double v = ig_laplace(u, ig);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("tau_density stable-1/2 hitting time") {
  CHECK(tau_density(1.5, -0.3) == 0.0);
  CHECK_THROWS_AS(tau_density(-1.0, 0.5), std::domain_error);

  double mass = integrate_zero_inf(
      [](double s) { return tau_density(1.5, s); }, 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  // E exp(-(t^2/8) tau(c)) = exp(-c t/2)
  double c = 1.0, t = 2.0;
  double lhs = integrate_zero_inf(
      [&](double s) {
        return std::exp(-t * t / 8.0 * s) * tau_density(c, s);
      },
      1e-12);
  CHECK(lhs == doctest::Approx(std::exp(-c * t / 2.0)).epsilon(1e-8));
}

TEST_CASE("density_C Laplace transform is sech^h") {
  SeriesControl ctrl;
  for (double h : {1.0, 2.5, 4.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      double lhs = integrate_zero_inf(
          [&](double s) {
            return std::exp(-t * t / 8.0 * s) * density_C(h, s, ctrl);
          },
          1e-12);
      double rhs = std::pow(1.0 / std::cosh(t / 2.0), h);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }
  }

  double mass = integrate_zero_inf(
      [&](double s) { return density_C(1.0, s, ctrl); }, 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

  for (double s = 1e-3; s < 50.0; s *= 2.7) {
    CHECK(density_C(2.0, s, ctrl) >= 0.0);
  }
}

TEST_CASE("density_T1 Laplace transform is tanh(t/2)/(t/2)") {
  SeriesControl ctrl;
  double t = 1.7;
  double lhs = integrate_zero_inf(
      [&](double s) {
        return std::exp(-t * t / 8.0 * s) * density_T1(s, ctrl);
      },
      1e-12);
  CHECK(lhs == doctest::Approx(std::tanh(t / 2.0) / (t / 2.0)).epsilon(1e-6));

  double mass =
      integrate_zero_inf([&](double s) { return density_T1(s, ctrl); }, 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

  // finite for tiny s; direct and Poisson-summed forms agree at the switch
  CHECK(std::isfinite(density_T1(1e-4, ctrl)));
  double direct = 0.0;
  for (unsigned k = 0; k < 400; ++k)
    direct += std::exp(-M_PI * M_PI / 2.0 * (k + 0.5) * (k + 0.5) * 0.3);
  CHECK(density_T1(0.3, ctrl) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("conv_T1_C transform product rule") {
  SeriesControl ctrl;
  double h = 1.5, t = 1.0;
  double lhs = integrate_zero_inf(
      [&](double s) {
        return std::exp(-t * t / 8.0 * s) * conv_T1_C(h, s, ctrl);
      },
      1e-10);
  double rhs = std::tanh(t / 2.0) / (t / 2.0) *
               std::pow(1.0 / std::cosh(t / 2.0), h);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));

  for (double s : {0.1, 0.8, 3.0, 12.0}) CHECK(conv_T1_C(2.0, s, ctrl) >= 0.0);
  CHECK(conv_T1_C(2.0, 1e-8, ctrl) == 0.0);

  double mass = integrate_zero_inf(
      [&](double s) { return conv_T1_C(2.0, s, ctrl); }, 1e-10);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rescaled exponent variant (t^2/2 in place of t^2/8)") {
  // substituting t -> 2t in the transforms gives exp(-t^2/2 s) kernels
  SeriesControl ctrl;
  double h = 2.0, t = 0.9;
  double lhs = integrate_zero_inf(
      [&](double s) {
        return std::exp(-t * t / 2.0 * s) * density_C(h, s, ctrl);
      },
      1e-12);
  CHECK(lhs == doctest::Approx(std::pow(1.0 / std::cosh(t), h)).epsilon(1e-6));

  double lhs2 = integrate_zero_inf(
      [&](double s) {
        return std::exp(-t * t / 2.0 * s) * density_T1(s, ctrl);
      },
      1e-12);
  CHECK(lhs2 == doctest::Approx(std::tanh(t) / t).epsilon(1e-6));
}
