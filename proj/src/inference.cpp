#include "jacobi/inference.hpp"

#include <cmath>
#include <stdexcept>

namespace jacobi {

namespace {

void check_jacobi_path(const Trajectory& traj) {
  if (traj.kind != TrajectoryKind::jacobi_pm1)
    throw std::invalid_argument("estimator: expects a jacobi_pm1 trajectory");
  if (traj.times.size() < 2)
    throw std::invalid_argument("estimator: need at least 2 points");
  for (double v : traj.values)
    if (!(std::abs(v) < 1.0))
      throw std::domain_error("estimator: path value outside (-1,1)");
}

// trapezoid of g(Y_s) ds over the observed grid
template <typename G>
double trapezoid(const Trajectory& traj, G g) {
  double acc = 0.0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    double h = traj.times[i] - traj.times[i - 1];
    acc += 0.5 * h * (g(traj.values[i - 1]) + g(traj.values[i]));
  }
  return acc;
}

double info_integral(const Trajectory& traj) {
  return trapezoid(traj, [](double y) { return y * y / (1.0 - y * y); });
}

double ito_numerator(const Trajectory& traj) {
  double acc = 0.0;
  for (std::size_t i = 1; i < traj.values.size(); ++i) {
    double y = traj.values[i - 1];
    acc += y / (1.0 - y * y) * (traj.values[i] - traj.values[i - 1]);
  }
  return acc;
}

double big_f(double y) { return -0.5 * std::log(1.0 - y * y); }

double pathwise_numerator(const Trajectory& traj) {
  double time_int = trapezoid(
      traj, [](double y) { return (1.0 + y * y) / (1.0 - y * y); });
  return big_f(traj.values.back()) - big_f(traj.values.front()) -
         0.5 * time_int;
}

void check_denominator(double denom, double horizon) {
  if (denom < 1e-12 * horizon)
    throw std::runtime_error("estimator: degenerate path (denominator ~ 0)");
}

}  // namespace

EstimateResult mle_b(const Trajectory& traj, EstimatorMode mode) {
  check_jacobi_path(traj);
  double horizon = traj.times.back();
  double denom = info_integral(traj);
  check_denominator(denom, horizon);
  double numer = mode == EstimatorMode::pathwise ? pathwise_numerator(traj)
                                                 : ito_numerator(traj);
  return {numer / denom, numer, denom, horizon, mode};
}

EstimateResult nu_hat(const Trajectory& traj) {
  check_jacobi_path(traj);
  double horizon = traj.times.back();
  double denom = info_integral(traj);
  check_denominator(denom, horizon);
  double yt = traj.values.back();
  double y0 = traj.values.front();
  double numer = std::log(1.0 - yt * yt) - std::log(1.0 - y0 * y0) +
                 (horizon - traj.times.front());
  return {numer / (2.0 * denom), numer, 2.0 * denom, horizon,
          EstimatorMode::pathwise};
}

EstimateResult bessel_mle_nu(const Trajectory& traj) {
  if (traj.kind != TrajectoryKind::squared_bessel)
    throw std::invalid_argument("bessel_mle_nu: expects a squared_bessel path");
  if (traj.times.size() < 2)
    throw std::invalid_argument("bessel_mle_nu: need at least 2 points");
  if (std::abs(traj.values.front() - 1.0) > 1e-9)
    throw std::domain_error("bessel_mle_nu: path must start at X_0 = 1");
  for (double v : traj.values)
    if (!(v > 0.0))
      throw std::domain_error("bessel_mle_nu: nonpositive path value");

  double horizon = traj.times.back();
  double denom = 0.0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    double h = traj.times[i] - traj.times[i - 1];
    denom += 0.5 * h * (1.0 / traj.values[i - 1] + 1.0 / traj.values[i]);
  }
  check_denominator(denom, horizon);
  double numer = std::log(traj.values.back());
  return {numer / (2.0 * denom), numer, 2.0 * denom, horizon,
          EstimatorMode::pathwise};
}

double girsanov_loglik(const Trajectory& traj, double b, double b0,
                       EstimatorMode mode) {
  check_jacobi_path(traj);
  double denom = info_integral(traj);
  double numer = mode == EstimatorMode::pathwise ? pathwise_numerator(traj)
                                                 : ito_numerator(traj);
  return (b - b0) * numer - 0.5 * (b * b - b0 * b0) * denom;
}

}  // namespace jacobi
