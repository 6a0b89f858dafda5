#ifndef JACOBI_INFERENCE_HPP
#define JACOBI_INFERENCE_HPP

#include "jacobi/sim.hpp"

namespace jacobi {

enum class EstimatorMode { stochastic_integral, pathwise };

struct EstimateResult {
  double estimate;
  double numerator;
  double denominator;
  double horizon;
  EstimatorMode mode;
};

// Drift MLE b_hat = int Y/(1-Y^2) dY / int Y^2/(1-Y^2) ds.
// stochastic_integral: left-point Ito sum for the numerator.
// pathwise: numerator via the Ito reduction
//   F(Y_t) - F(y_0) - (1/2) int (1+Y^2)/(1-Y^2) ds,  F(y) = -log(1-y^2)/2,
// which removes the discretization error of the stochastic integral.
EstimateResult mle_b(const Trajectory& traj,
                     EstimatorMode mode = EstimatorMode::pathwise);

// Index estimator nu_hat = -b_hat(pathwise) - 1 in closed pathwise form.
EstimateResult nu_hat(const Trajectory& traj);

// Squared-Bessel MLE of the index, log(X_t) / (2 int ds/X_s); path must
// start at X_0 = 1.
EstimateResult bessel_mle_nu(const Trajectory& traj);

// log dQ^b/dQ^{b0} along the observed path.
double girsanov_loglik(const Trajectory& traj, double b, double b0,
                       EstimatorMode mode = EstimatorMode::pathwise);

}  // namespace jacobi

#endif  // JACOBI_INFERENCE_HPP
