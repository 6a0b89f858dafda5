#include "jacobi/levy.hpp"

#include <cmath>
#include <stdexcept>

#include "jacobi/quadrature.hpp"

namespace jacobi {

double ig_density(double s, const IGParams& ig) {
  if (s <= 0.0) return 0.0;
  double lg = std::log(ig.delta * ig.t) - 0.5 * std::log(2.0 * M_PI) +
              ig.delta * ig.t * ig.mu - 1.5 * std::log(s) -
              0.5 * (ig.t * ig.t * ig.delta * ig.delta / s +
                     ig.mu * ig.mu * s);
  return std::exp(lg);
}

double ig_laplace(double u, const IGParams& ig) {
  if (u < 0.0) throw std::domain_error("ig_laplace: requires u >= 0");
  return std::exp(-ig.t * ig.delta *
                  (std::sqrt(2.0 * u + ig.mu * ig.mu) - ig.mu));
}

double tau_density(double c, double s) {
  if (!(c > 0.0)) throw std::domain_error("tau_density: requires c > 0");
  if (s <= 0.0) return 0.0;
  return c / std::sqrt(2.0 * M_PI * s * s * s) *
         std::exp(-c * c / (2.0 * s));
}

double density_C(double h, double s, const SeriesControl& ctrl) {
  if (!(h > 0.0)) throw std::domain_error("density_C: requires h > 0");
  if (!(s > 0.0)) throw std::domain_error("density_C: requires s > 0");
  // tail ~ exp(-pi^2 s / 8): below double range long before s = 400, and
  // the alternating series would need O(sqrt(s)) terms to say so
  if (s > 400.0) return 0.0;

  const double log_pref = h * std::log(2.0) - std::lgamma(h) -
                          0.5 * std::log(2.0 * M_PI * s * s * s);
  double sum = 0.0;
  // alternating series, summed in adjacent pairs
  for (unsigned p = 0; p < ctrl.max_terms; p += 2) {
    double pair = 0.0;
    double mag = 0.0;
    for (unsigned j = p; j < p + 2; ++j) {
      double c = 2.0 * j + h;
      double lt = log_pref + std::lgamma(j + h) - std::lgamma(j + 1.0) +
                  std::log(c) - c * c / (2.0 * s);
      double t = std::exp(lt);
      mag = std::max(mag, t);
      pair += (j % 2 == 0) ? t : -t;
    }
    sum += pair;
    if (mag < ctrl.abs_tol) return sum;
  }
  throw std::runtime_error("density_C: not converged within max_terms");
}

double density_T1(double s, const SeriesControl& ctrl) {
  if (!(s > 0.0)) throw std::domain_error("density_T1: requires s > 0");
  if (s < 0.5) {
    // Poisson-summed form: fast for small s
    double sum = 1.0;
    for (unsigned m = 1; m <= 64; ++m) {
      double term = std::exp(-2.0 * m * m / s);
      if (term < ctrl.abs_tol) break;
      sum += 2.0 * ((m % 2 == 0) ? term : -term);
    }
    return sum / std::sqrt(2.0 * M_PI * s);
  }
  double sum = 0.0;
  for (unsigned k = 0; k < ctrl.max_terms; ++k) {
    double e = (k + 0.5) * (k + 0.5) * M_PI * M_PI / 2.0 * s;
    double term = std::exp(-e);
    sum += term;
    if (term < ctrl.abs_tol) return sum;
  }
  throw std::runtime_error("density_T1: not converged within max_terms");
}

double conv_T1_C(double h, double s, const SeriesControl& ctrl) {
  if (!(h > 0.0)) throw std::domain_error("conv_T1_C: requires h > 0");
  if (!(s > 0.0)) throw std::domain_error("conv_T1_C: requires s > 0");
  // both factors are O(exp(-c/s)) here; the integral underflows
  if (s < 1e-6) return 0.0;

  auto integrand = [&](double u) {
    return density_C(h, u, ctrl) * density_T1(s - u, ctrl);
  };
  // f_C vanishes super-exponentially at u -> 0, f_T1 has an integrable
  // 1/sqrt singularity at u -> s; split at the midpoint
  double left = integrate_tanh_sinh(integrand, 0.0, s / 2.0, 1e-12);
  double right = integrate_tanh_sinh(integrand, s / 2.0, s, 1e-12);
  return left + right;
}

}  // namespace jacobi
