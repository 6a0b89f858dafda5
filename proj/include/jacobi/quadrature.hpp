#ifndef JACOBI_QUADRATURE_HPP
#define JACOBI_QUADRATURE_HPP

#include <functional>

namespace jacobi {

// Adaptive Gauss-Kronrod (7-15) on a finite interval.  Suitable for
// integrands that are smooth away from isolated difficult spots; the
// interval is bisected until the Kronrod error estimate meets abs_tol.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-10, int max_depth = 18);

// tanh-sinh (double-exponential) quadrature on (a, b).  Handles integrable
// endpoint singularities such as (1-y)^alpha weights with alpha > -1; the
// integrand is never evaluated at the endpoints themselves.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-12);

// Integral over (0, infinity), via exp-sinh substitution.
double integrate_zero_inf(const std::function<double(double)>& f,
                          double abs_tol = 1e-10);

}  // namespace jacobi

#endif  // JACOBI_QUADRATURE_HPP
