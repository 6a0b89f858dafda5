#include "jacobi/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "jacobi/levy.hpp"
#include "jacobi/specfun.hpp"

namespace jacobi {

namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// sup norm bound |P_n(x)| <= max(|P_n(1)|, |P_n(-1)|) on [-1,1],
// valid for max(alpha,beta) >= -1/2.
double jacobi_sup_bound(unsigned n, const JacobiParams& params) {
  double at1 = std::exp(log_pochhammer(params.alpha() + 1.0, n) -
                        std::lgamma(n + 1.0));
  double atm1 = std::exp(log_pochhammer(params.beta() + 1.0, n) -
                         std::lgamma(n + 1.0));
  return std::max(at1, atm1);
}

// (a)_{2n} / ((alpha+1)_n (beta+1)_n)
double coeff_a2n(unsigned n, const JacobiParams& params) {
  return std::exp(log_pochhammer(params.a(), 2 * n) -
                  log_pochhammer(params.alpha() + 1.0, n) -
                  log_pochhammer(params.beta() + 1.0, n));
}

// E_n(x,y) = (1+xy)^n z^n P_n(1/z) with z = (x+y)/(1+xy), expanded as
//   2^{-n} sum_k C(n+alpha,k) C(n+beta,n-k) [(1-x)(1-y)]^{n-k} [(1+x)(1+y)]^k
// -- all terms positive on (-1,1)^2, and finite at x+y = 0.
double kernel_poly(unsigned n, const JacobiParams& params, double x, double y) {
  const double U = (1.0 - x) * (1.0 - y);
  const double V = (1.0 + x) * (1.0 + y);
  const double alpha = params.alpha();
  const double beta = params.beta();
  double sum, term;
  if (U >= V) {
    // ascend from k = 0: C(n+beta,n) (U/2)^n
    term = std::exp(log_pochhammer(beta + 1.0, n) - std::lgamma(n + 1.0) +
                    n * std::log(U / 2.0));
    sum = term;
    for (unsigned k = 0; k < n; ++k) {
      term *= (n + alpha - k) * (n - static_cast<double>(k)) /
              ((k + 1.0) * (beta + k + 1.0)) * (V / U);
      sum += term;
    }
  } else {
    // descend from k = n: C(n+alpha,n) (V/2)^n
    term = std::exp(log_pochhammer(alpha + 1.0, n) - std::lgamma(n + 1.0) +
                    n * std::log(V / 2.0));
    sum = term;
    for (unsigned k = n; k > 0; --k) {
      term *= k * (beta + k) /
              ((n + alpha - k + 1.0) * (n - k + 1.0)) * (U / V);
      sum += term;
    }
  }
  return sum;
}

}  // namespace

double stationary_density(double y, const JacobiParams& params) {
  if (!(std::abs(y) < 1.0))
    throw std::domain_error("stationary_density: requires |y| < 1");
  const double alpha = params.alpha();
  const double beta = params.beta();
  double lg = alpha * std::log(1.0 - y) + beta * std::log(1.0 + y) -
              (alpha + beta + 1.0) * std::log(2.0) -
              log_beta(alpha + 1.0, beta + 1.0);
  return std::exp(lg);
}

double density_spectral(const KernelPoint& pt, const JacobiParams& params,
                        const SeriesControl& ctrl) {
  double sum = 0.0;
  unsigned quiet = 0;
  for (unsigned n = 0; n < ctrl.max_terms; ++n) {
    double rn = jacobi_norm(n, params);
    sum += std::exp(-params.lambda(n) * pt.t) / rn *
           jacobi_poly(n, params, pt.x) * jacobi_poly(n, params, pt.y);
    double bound = std::exp(-params.lambda(n) * pt.t) *
                   std::pow(jacobi_sup_bound(n, params), 2) / rn;
    if (bound < ctrl.abs_tol) {
      if (++quiet >= 2) return sum * stationary_density(pt.y, params);
    } else {
      quiet = 0;
    }
  }
  throw std::runtime_error(
      "density_spectral: truncation bound not met within max_terms "
      "(t too small; use density_convolution)");
}

double poisson_kernel(double r, double x, double y, const JacobiParams& params,
                      const SeriesControl& ctrl) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::domain_error("poisson_kernel: requires 0 < r < 1");
  const double a = params.a();
  const double u = (1.0 - x) * (1.0 - y) * r / ((1.0 + r) * (1.0 + r));
  const double v = (1.0 + x) * (1.0 + y) * r / ((1.0 + r) * (1.0 + r));
  return (1.0 - r) / std::pow(1.0 + r, a) *
         appell_F4(a / 2.0, (a + 1.0) / 2.0, params.alpha() + 1.0,
                   params.beta() + 1.0, u, v, ctrl);
}

double poisson_kernel_series(double r, double x, double y,
                             const JacobiParams& params, unsigned n_terms) {
  double sum = 0.0;
  for (unsigned n = 0; n < n_terms; ++n) {
    sum += std::pow(r, n) / jacobi_norm(n, params) *
           jacobi_poly(n, params, x) * jacobi_poly(n, params, y);
  }
  return sum;
}

double poisson_kernel_ultraspherical(double r, double x, double y, double alpha,
                                     const SeriesControl& ctrl) {
  if (!(alpha > -0.5))
    throw std::domain_error(
        "poisson_kernel_ultraspherical: requires alpha > -1/2");
  const double u = (1.0 - x) * (1.0 - y) * r / ((1.0 + r) * (1.0 + r));
  const double v = (1.0 + x) * (1.0 + y) * r / ((1.0 + r) * (1.0 + r));
  const double omuv = 1.0 - u - v;
  return (1.0 - r) / std::pow(1.0 + r, 2.0 * alpha + 2.0) *
         std::pow(omuv, -(alpha + 1.5)) *
         hyp2F1((2.0 * alpha + 3.0) / 4.0, (2.0 * alpha + 5.0) / 4.0,
                alpha + 1.0, 4.0 * u * v / (omuv * omuv), ctrl);
}

double subordinated_kernel(double t, double x, double y,
                           const JacobiParams& params,
                           const SeriesControl& ctrl) {
  if (!(t > 0.0)) throw std::domain_error("subordinated_kernel: t > 0");
  if (!(params.alpha() + params.beta() > -1.0))
    throw std::domain_error("subordinated_kernel: requires alpha+beta > -1");
  const double r = std::exp(-t);
  const double a = params.a();
  const double A = r / (2.0 * (1.0 + r) * (1.0 + r));

  double sum = 0.0;
  unsigned quiet = 0;
  double An = 1.0;
  bool converged = false;
  for (unsigned n = 0; n < ctrl.max_terms; ++n) {
    double term = coeff_a2n(n, params) * kernel_poly(n, params, x, y) * An;
    sum += term;
    if (std::abs(term) < ctrl.abs_tol * (1.0 + std::abs(sum))) {
      if (++quiet >= 3) {
        converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
    An *= A;
  }
  if (!converged)
    throw std::runtime_error("subordinated_kernel: not converged");
  return stationary_density(y, params) * (1.0 - r) / std::pow(1.0 + r, a) *
         sum;
}

double density_convolution(const KernelPoint& pt, const JacobiParams& params,
                           const SeriesControl& ctrl) {
  if (!(params.alpha() + params.beta() > -1.0))
    throw std::domain_error("density_convolution: requires alpha+beta > -1");
  const double t = pt.t;
  const double x = pt.x;
  const double y = pt.y;
  const double a = params.a();
  const double gamma = params.gamma();

  double sum = 0.0;
  unsigned quiet = 0;
  double Bn = 1.0;
  bool converged = false;
  for (unsigned n = 0; n < ctrl.max_terms; ++n) {
    double conv = conv_T1_C(2.0 * n + a - 1.0, 2.0 / t, ctrl);
    double term =
        coeff_a2n(n, params) * kernel_poly(n, params, x, y) * Bn * conv;
    sum += term;
    // conv_T1_C decays super-exponentially in its index
    if (std::abs(term) < ctrl.abs_tol * (1.0 + std::abs(sum))) {
      if (++quiet >= 2) {
        converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
    Bn *= 0.125;
  }
  if (!converged)
    throw std::runtime_error("density_convolution: not converged");
  double pref = std::sqrt(M_PI) * stationary_density(y, params) /
                std::pow(2.0, params.alpha() + params.beta()) *
                std::exp(gamma * gamma * t) / std::sqrt(t);
  return pref * sum;
}

double density_ultraspherical(const KernelPoint& pt, double alpha,
                              const SeriesControl& ctrl) {
  if (!(alpha > -0.5))
    throw std::domain_error("density_ultraspherical: requires alpha > -1/2");
  const double t = pt.t;
  const double x = pt.x;
  const double y = pt.y;
  const double gamma = alpha + 0.5;
  const double K = std::exp(std::lgamma(alpha + 1.0) -
                            (alpha + 0.5) * std::log(2.0) -
                            std::lgamma(alpha + 1.5));
  const JacobiParams params(alpha, alpha);
  const double B = (1.0 - x * x) * (1.0 - y * y) / 4.0;

  double sum = 0.0;
  bool outer_converged = false;
  double Bn = 1.0;
  for (unsigned n = 0; n < ctrl.max_terms; ++n) {
    double inner = 0.0;
    double xyk = 1.0;
    unsigned quiet = 0;
    for (unsigned k = 0; k < ctrl.max_terms; ++k) {
      double nu = 2.0 * n + k + alpha + 0.5;
      double conv = conv_T1_C(nu, 1.0 / (2.0 * t), ctrl);
      double term = std::exp(std::lgamma(nu + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n + 1.0) -
                             std::lgamma(alpha + n + 1.0)) *
                    xyk * Bn * conv;
      inner += term;
      if (std::abs(term) < ctrl.abs_tol * (1.0 + std::abs(sum + inner))) {
        if (++quiet >= 2) break;
      } else {
        quiet = 0;
      }
      xyk *= x * y;
    }
    sum += inner;
    if (std::abs(inner) < ctrl.abs_tol * (1.0 + std::abs(sum))) {
      outer_converged = true;
      break;
    }
    Bn *= B;
  }
  if (!outer_converged)
    throw std::runtime_error("density_ultraspherical: not converged");
  return std::sqrt(M_PI) * K * std::exp(gamma * gamma * t) / std::sqrt(t) *
         stationary_density(y, params) * sum;
}

double density_from_zero(double t, double y, double alpha,
                         const SeriesControl& ctrl) {
  if (!(t > 0.0) || !(std::abs(y) < 1.0))
    throw std::domain_error("density_from_zero: require t > 0, |y| < 1");
  if (!(alpha >= 0.0))
    throw std::domain_error("density_from_zero: requires alpha >= 0");
  // Y_t = X_{t/2}: evaluate the ultraspherical from-zero series at clock t/2
  const double gamma = alpha + 0.5;
  const double K = std::exp(std::lgamma(alpha + 1.0) -
                            (alpha + 0.5) * std::log(2.0) -
                            std::lgamma(alpha + 1.5));
  const JacobiParams params(alpha, alpha);

  double sum = 0.0;
  double Bn = 1.0;
  const double B = (1.0 - y * y) / 4.0;
  bool converged = false;
  for (unsigned n = 0; n < ctrl.max_terms; ++n) {
    double conv = conv_T1_C(2.0 * n + gamma, 1.0 / t, ctrl);
    double term = std::exp(std::lgamma(2.0 * n + alpha + 1.5) -
                           std::lgamma(n + 1.0) -
                           std::lgamma(n + alpha + 1.0)) *
                  Bn * conv;
    sum += term;
    if (std::abs(term) < ctrl.abs_tol * (1.0 + std::abs(sum))) {
      converged = true;
      break;
    }
    Bn *= B;
  }
  if (!converged)
    throw std::runtime_error("density_from_zero: not converged");
  return std::sqrt(2.0 * M_PI) * K *
         std::exp(gamma * gamma * t / 2.0) / std::sqrt(t) *
         stationary_density(y, params) * sum;
}

}  // namespace jacobi
