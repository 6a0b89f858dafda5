#ifndef JACOBI_SIM_HPP
#define JACOBI_SIM_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jacobi/params.hpp"

namespace jacobi {

enum class TrajectoryKind { jacobi_pm1, jacobi_01, squared_bessel };

struct TrajectoryMeta {
  std::string scheme;
  std::uint64_t seed = 0;
  double dt = 0.0;
  double b = 0.0;
  double c = 0.0;
  double dim = 0.0;
  double start = 0.0;
};

struct Trajectory {
  std::vector<double> times;   // strictly increasing, starts at 0
  std::vector<double> values;  // same length
  TrajectoryKind kind;
  TrajectoryMeta meta;
};

enum class BoundaryBehavior { unattainable, reflecting };

struct BoundaryReport {
  BoundaryBehavior lower;  // boundary 0 of J, controlled by d  (beta)
  BoundaryBehavior upper;  // boundary 1 of J, controlled by d' (alpha)
};

BoundaryReport classify_boundaries(const JacobiParams& params);

// Deterministic per-trajectory stream: same (seed, index) gives the same
// engine regardless of scheduling or thread count.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index);

// Euler-Maruyama for dY = sqrt(1-Y^2) dW + (bY + c) dt with symmetric
// projection to +-(1 - 1e-12).  strict forbids attainable boundaries
// (requires the implied alpha, beta >= 0).
Trajectory simulate_jacobi(double b, double c, double y0, double horizon,
                           double dt, std::uint64_t seed,
                           std::uint64_t stream_index = 0, bool strict = false);

// Squared Bessel dZ = dim dt + 2 sqrt(Z) dW, sampled exactly per step via
// the noncentral chi-square transition; nonnegative by construction.
Trajectory simulate_squared_bessel(double dim, double z0, double horizon,
                                   double dt, std::uint64_t seed,
                                   std::uint64_t stream_index = 0);

// One exact squared-Bessel transition step (exposed for the harness).
double squared_bessel_step(double z, double dim, double dt,
                           std::mt19937_64& rng);

// Skew product: J = Z1/(Z1+Z2) time-changed by A_t = int ds/(Z1+Z2),
// returned on an even grid in A-time.  Inputs are squared-Bessel paths
// on a common clock.
Trajectory skew_product(const Trajectory& z1, const Trajectory& z2);

// CSV (t,value) + JSON sidecar with the meta block.
void write_trajectory(const Trajectory& traj, const std::string& csv_path);
Trajectory read_trajectory(const std::string& csv_path);

}  // namespace jacobi

#endif  // JACOBI_SIM_HPP
