#include "jacobi/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace jacobi {

namespace {

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

struct SignedLog {
  double log;
  int sign;  // -1, 0, +1
};

// log|(a)_n| with sign, valid for any real a.
SignedLog slog_pochhammer(double a, unsigned n) {
  if (n == 0) return {0.0, 1};
  if (a > 0.0) return {std::lgamma(a + n) - std::lgamma(a), 1};
  SignedLog r{0.0, 1};
  for (unsigned i = 0; i < n; ++i) {
    double f = a + i;
    if (f == 0.0) return {0.0, 0};
    if (f < 0.0) r.sign = -r.sign;
    r.log += std::log(std::abs(f));
  }
  return r;
}

}  // namespace

double pochhammer(double a, unsigned n) {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r *= a + i;
  return r;
}

double log_pochhammer(double a, unsigned n) {
  if (n == 0) return 0.0;
  if (!(a > 0.0))
    throw std::domain_error("log_pochhammer: requires a > 0");
  return std::lgamma(a + n) - std::lgamma(a);
}

double jacobi_poly(unsigned n, const JacobiParams& params, double x) {
  const double alpha = params.alpha();
  const double beta = params.beta();
  if (n == 0) return 1.0;
  double y0 = 1.0;
  double y1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
  for (unsigned k = 2; k <= n; ++k) {
    double ab = alpha + beta;
    double denom = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
    double g1 = (2.0 * k + ab - 1.0) *
                ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * x +
                 alpha * alpha - beta * beta);
    double g0 = -2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
    double yk = (g1 * y1 + g0 * y0) / denom;
    y0 = y1;
    y1 = yk;
  }
  return y1;
}

double jacobi_norm(unsigned n, const JacobiParams& params) {
  if (n == 0) return 1.0;
  const double alpha = params.alpha();
  const double beta = params.beta();
  // R_n = (alpha+1)_n (beta+1)_n / [(2n+alpha+beta+1)(alpha+beta+2)_{n-1} n!]
  double lg = log_pochhammer(alpha + 1.0, n) + log_pochhammer(beta + 1.0, n) -
              std::log(2.0 * n + alpha + beta + 1.0) -
              log_pochhammer(alpha + beta + 2.0, n - 1) -
              std::lgamma(n + 1.0);
  return std::exp(lg);
}

double hyp2F1(double a, double b, double c, double z,
              const SeriesControl& ctrl) {
  const bool term_a = is_nonpositive_integer(a);
  const bool term_b = is_nonpositive_integer(b);
  const bool terminating = term_a || term_b;
  unsigned n_stop = ctrl.max_terms;
  if (terminating) {
    double stop = term_a ? -a : -b;
    if (term_a && term_b) stop = std::min(-a, -b);
    n_stop = static_cast<unsigned>(stop);
  } else if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("hyp2F1: |z| >= 1 and series does not terminate");
  }
  if (is_nonpositive_integer(c) && (!terminating || -c < n_stop))
    throw std::domain_error("hyp2F1: pole at non-positive integer c");

  double sum = 1.0;
  double term = 1.0;
  for (unsigned k = 0; k < ctrl.max_terms; ++k) {
    if (terminating && k == n_stop + 1) return sum;
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (terminating && k == n_stop) return sum;
    if (!terminating &&
        std::abs(term) < ctrl.abs_tol * (1.0 - std::abs(z)))
      return sum;
  }
  if (terminating) return sum;
  throw std::runtime_error("hyp2F1: not converged within max_terms");
}

double hyp0F1(double c, double z, const SeriesControl& ctrl) {
  if (is_nonpositive_integer(c))
    throw std::domain_error("hyp0F1: pole at non-positive integer c");
  double sum = 1.0;
  double term = 1.0;
  for (unsigned k = 0; k < ctrl.max_terms; ++k) {
    term *= z / ((c + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) < ctrl.abs_tol) return sum;
  }
  throw std::runtime_error("hyp0F1: not converged within max_terms");
}

F4ConvergenceRegion f4_region(double u, double v) {
  return {u, v, std::sqrt(std::abs(u)) + std::sqrt(std::abs(v)) < 1.0};
}

double appell_F4(double a, double b, double c, double d, double u, double v,
                 const SeriesControl& ctrl) {
  const F4ConvergenceRegion region = f4_region(u, v);
  if (!region.converges)
    throw std::domain_error("appell_F4: outside convergence region "
                            "sqrt|u|+sqrt|v| < 1");
  if (is_nonpositive_integer(c) || is_nonpositive_integer(d))
    throw std::domain_error("appell_F4: pole at non-positive integer c or d");

  const double rho =
      std::pow(std::sqrt(std::abs(u)) + std::sqrt(std::abs(v)), 2);
  const double log_u = u != 0.0 ? std::log(std::abs(u)) : 0.0;
  const double log_v = v != 0.0 ? std::log(std::abs(v)) : 0.0;
  const int sgn_u = u > 0.0 ? 1 : (u < 0.0 ? -1 : 0);
  const int sgn_v = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);

  double sum = 0.0;
  unsigned quiet = 0;
  for (unsigned k = 0; k < ctrl.max_terms; ++k) {
    SignedLog ab_a = slog_pochhammer(a, k);
    SignedLog ab_b = slog_pochhammer(b, k);
    double diag = 0.0;
    for (unsigned m = 0; m <= k; ++m) {
      unsigned n = k - m;
      if ((u == 0.0 && m > 0) || (v == 0.0 && n > 0)) continue;
      SignedLog pc = slog_pochhammer(c, m);
      SignedLog pd = slog_pochhammer(d, n);
      if (pc.sign == 0 || pd.sign == 0)
        throw std::domain_error("appell_F4: Pochhammer zero in denominator");
      int sign = ab_a.sign * ab_b.sign * pc.sign * pd.sign;
      if (m % 2 == 1 && sgn_u < 0) sign = -sign;
      if (n % 2 == 1 && sgn_v < 0) sign = -sign;
      double lt = ab_a.log + ab_b.log - pc.log - pd.log -
                  std::lgamma(m + 1.0) - std::lgamma(n + 1.0) + m * log_u +
                  n * log_v;
      diag += sign * std::exp(lt);
    }
    sum += diag;
    // geometric tail bound once anti-diagonal sums have settled into decay
    if (std::abs(diag) / (1.0 - rho) < ctrl.abs_tol) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw std::runtime_error("appell_F4: not converged within max_terms");
}

double theta(double x) {
  if (!(x > 0.0)) throw std::domain_error("theta: requires x > 0");
  if (x < 1.0) return theta(1.0 / x) / std::sqrt(x);
  double sum = 1.0;
  for (unsigned l = 1; l <= 64; ++l) {
    double term = std::exp(-M_PI * static_cast<double>(l) * l * x);
    sum += 2.0 * term;
    if (term < 1e-18) break;
  }
  return sum;
}

}  // namespace jacobi
