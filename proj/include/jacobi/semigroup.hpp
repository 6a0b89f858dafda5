#ifndef JACOBI_SEMIGROUP_HPP
#define JACOBI_SEMIGROUP_HPP

#include <cmath>

#include "jacobi/params.hpp"

namespace jacobi {

// Evaluation point of a transition kernel p_t(x, y).
struct KernelPoint {
  double t;
  double x;
  double y;

  KernelPoint(double t_, double x_, double y_) : t(t_), x(x_), y(y_) {
    if (!(t > 0.0) || !(std::abs(x) < 1.0) || !(std::abs(y) < 1.0))
      throw std::domain_error("KernelPoint: require t > 0 and |x|,|y| < 1");
  }
};

// Stationary density W(y) on (-1,1); integrates to 1.
double stationary_density(double y, const JacobiParams& params);

// All kernels below are densities in y with respect to Lebesgue measure
// on (-1,1): the stationary weight W(y) is folded in.

// Spectral route: sum_n R_n^{-1} e^{-lambda_n t} P_n(x) P_n(y) W(y).
// Throws if the a-priori truncation bound cannot be met within max_terms
// (small t: use density_convolution instead).
double density_spectral(const KernelPoint& pt, const JacobiParams& params,
                        const SeriesControl& ctrl = SeriesControl());

// Bilinear Poisson kernel sum_n R_n^{-1} P_n(x) P_n(y) r^n, closed form
// via Appell F4.  W(y) is NOT included here.
double poisson_kernel(double r, double x, double y, const JacobiParams& params,
                      const SeriesControl& ctrl = SeriesControl());

// Direct truncated bilinear sum, for cross-checking the closed form.
double poisson_kernel_series(double r, double x, double y,
                             const JacobiParams& params, unsigned n_terms);

// Ultraspherical (alpha = beta) closed form of the Poisson kernel via the
// Bailey reduction of F4 to a single 2F1.
double poisson_kernel_ultraspherical(double r, double x, double y, double alpha,
                                     const SeriesControl& ctrl = SeriesControl());

// Kernel of the subordinated process, q_t(x,y) = W(y) * poisson(e^{-t}).
// Evaluated through its own series in P_n(z), z=(x+y)/(1+xy).
// Requires alpha + beta > -1.
double subordinated_kernel(double t, double x, double y,
                           const JacobiParams& params,
                           const SeriesControl& ctrl = SeriesControl());

// Convolution route: series over n of (f_T1 * f_C_{2n+alpha+beta+1})(2/t)
// terms.  Independent of the spectral route; preferred for small t.
double density_convolution(const KernelPoint& pt, const JacobiParams& params,
                           const SeriesControl& ctrl = SeriesControl());

// Ultraspherical double-series route, alpha = beta > -1/2.
double density_ultraspherical(const KernelPoint& pt, double alpha,
                              const SeriesControl& ctrl = SeriesControl());

// Transition density from y0 = 0 for the SDE-clock process Y_t = X_{t/2},
// ultraspherical case, alpha >= 0.  Single series in n.
double density_from_zero(double t, double y, double alpha,
                         const SeriesControl& ctrl = SeriesControl());

}  // namespace jacobi

#endif  // JACOBI_SEMIGROUP_HPP
