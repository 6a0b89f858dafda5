#ifndef JACOBI_PARAMS_HPP
#define JACOBI_PARAMS_HPP

#include <stdexcept>

namespace jacobi {

// Canonical parameterization of the Jacobi diffusion on [-1,1] with
// generator (1-x^2) d^2/dx^2 + (p x + q) d/dx.  (alpha, beta) is the
// single source of truth; every other dictionary is a view:
//
//   p  = -(beta + alpha + 2)     q  = beta - alpha
//   b  = p/2                     c  = q/2
//   d  = 2(beta + 1)             d' = 2(alpha + 1)
//
// Immutable value type; safe to share across threads.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > -1.0) || !(beta > -1.0))
      throw std::domain_error("JacobiParams: require alpha > -1 and beta > -1");
  }

  static JacobiParams from_alpha_beta(double alpha, double beta) {
    return JacobiParams(alpha, beta);
  }
  static JacobiParams from_pq(double p, double q) {
    return JacobiParams(-(p + q) / 2.0 - 1.0, (q - p) / 2.0 - 1.0);
  }
  static JacobiParams from_bc(double b, double c) {
    return from_pq(2.0 * b, 2.0 * c);
  }
  static JacobiParams from_dd(double d, double dprime) {
    return JacobiParams(dprime / 2.0 - 1.0, d / 2.0 - 1.0);
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double p() const { return -(beta_ + alpha_ + 2.0); }
  double q() const { return beta_ - alpha_; }
  double b() const { return p() / 2.0; }
  double c() const { return q() / 2.0; }
  double d() const { return 2.0 * (beta_ + 1.0); }
  double dprime() const { return 2.0 * (alpha_ + 1.0); }
  double gamma() const { return (alpha_ + beta_ + 1.0) / 2.0; }
  double a() const { return alpha_ + beta_ + 2.0; }

  // Eigenvalue of -L on the n-th Jacobi polynomial.
  double lambda(unsigned n) const {
    return n * (n + alpha_ + beta_ + 1.0);
  }

 private:
  double alpha_;
  double beta_;
};

// Truncation/tolerance policy shared by the series and quadrature code.
struct SeriesControl {
  unsigned max_terms = 400;
  double abs_tol = 1e-14;
  unsigned quadrature_points = 15;

  SeriesControl() = default;
  SeriesControl(unsigned max_terms_, double abs_tol_,
                unsigned quadrature_points_ = 15)
      : max_terms(max_terms_),
        abs_tol(abs_tol_),
        quadrature_points(quadrature_points_) {
    if (max_terms < 1 || !(abs_tol > 0.0) || !(abs_tol < 1.0) ||
        quadrature_points < 1)
      throw std::domain_error("SeriesControl: invalid policy");
  }
};

}  // namespace jacobi

#endif  // JACOBI_PARAMS_HPP
