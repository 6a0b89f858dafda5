#include "jacobi/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace jacobi {

namespace {

constexpr double kBoundaryEps = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string kind_name(TrajectoryKind k) {
  switch (k) {
    case TrajectoryKind::jacobi_pm1: return "jacobi_pm1";
    case TrajectoryKind::jacobi_01: return "jacobi_01";
    case TrajectoryKind::squared_bessel: return "squared_bessel";
  }
  return "unknown";
}

TrajectoryKind kind_from_name(const std::string& s) {
  if (s == "jacobi_pm1") return TrajectoryKind::jacobi_pm1;
  if (s == "jacobi_01") return TrajectoryKind::jacobi_01;
  if (s == "squared_bessel") return TrajectoryKind::squared_bessel;
  throw std::runtime_error("unknown trajectory kind: " + s);
}

}  // namespace

BoundaryReport classify_boundaries(const JacobiParams& params) {
  BoundaryReport r;
  r.lower = params.d() >= 2.0 ? BoundaryBehavior::unattainable
                              : BoundaryBehavior::reflecting;
  r.upper = params.dprime() >= 2.0 ? BoundaryBehavior::unattainable
                                   : BoundaryBehavior::reflecting;
  return r;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

Trajectory simulate_jacobi(double b, double c, double y0, double horizon,
                           double dt, std::uint64_t seed,
                           std::uint64_t stream_index, bool strict) {
  if (!(std::abs(y0) < 1.0))
    throw std::domain_error("simulate_jacobi: requires |y0| < 1");
  if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon)
    throw std::domain_error("simulate_jacobi: requires 0 < dt <= horizon");
  if (strict) {
    JacobiParams params = JacobiParams::from_bc(b, c);
    if (params.alpha() < 0.0 || params.beta() < 0.0)
      throw std::domain_error(
          "simulate_jacobi: strict mode requires unattainable boundaries "
          "(alpha, beta >= 0)");
  }

  auto rng = make_stream(seed, stream_index);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto n_steps = static_cast<std::size_t>(std::llround(horizon / dt));
  Trajectory traj;
  traj.kind = TrajectoryKind::jacobi_pm1;
  traj.meta = {"euler_proj", seed, dt, b, c, 0.0, y0};
  traj.times.reserve(n_steps + 1);
  traj.values.reserve(n_steps + 1);

  const double sqdt = std::sqrt(dt);
  double y = y0;
  traj.times.push_back(0.0);
  traj.values.push_back(y);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    double diff = std::sqrt(std::max(0.0, 1.0 - y * y));
    y += diff * sqdt * gauss(rng) + (b * y + c) * dt;
    double cap = 1.0 - kBoundaryEps;
    if (y > cap) y = cap;
    if (y < -cap) y = -cap;
    traj.times.push_back(i * dt);
    traj.values.push_back(y);
  }
  return traj;
}

double squared_bessel_step(double z, double dim, double dt,
                           std::mt19937_64& rng) {
  // Z_{t+dt} ~ dt * chi'^2(dim, z/dt)
  std::normal_distribution<double> gauss(0.0, 1.0);
  double lambda = z / dt;
  double chi2;
  if (dim > 1.0) {
    double n = gauss(rng) + std::sqrt(lambda);
    std::gamma_distribution<double> g((dim - 1.0) / 2.0, 2.0);
    chi2 = n * n + g(rng);
  } else {
    std::poisson_distribution<long> pois(lambda / 2.0);
    long j = pois(rng);
    double df = dim + 2.0 * j;
    if (df == 0.0) return 0.0;
    std::gamma_distribution<double> g(df / 2.0, 2.0);
    chi2 = g(rng);
  }
  return dt * chi2;
}

Trajectory simulate_squared_bessel(double dim, double z0, double horizon,
                                   double dt, std::uint64_t seed,
                                   std::uint64_t stream_index) {
  if (!(dim > 0.0)) throw std::domain_error("simulate_squared_bessel: dim > 0");
  if (z0 < 0.0) throw std::domain_error("simulate_squared_bessel: z0 >= 0");
  if (!(dt > 0.0) || !(horizon > 0.0) || dt > horizon)
    throw std::domain_error("simulate_squared_bessel: 0 < dt <= horizon");

  auto rng = make_stream(seed, stream_index);
  const auto n_steps = static_cast<std::size_t>(std::llround(horizon / dt));
  Trajectory traj;
  traj.kind = TrajectoryKind::squared_bessel;
  traj.meta = {"besq_exact", seed, dt, 0.0, 0.0, dim, z0};
  traj.times.reserve(n_steps + 1);
  traj.values.reserve(n_steps + 1);

  double z = z0;
  traj.times.push_back(0.0);
  traj.values.push_back(z);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    z = squared_bessel_step(z, dim, dt, rng);
    traj.times.push_back(i * dt);
    traj.values.push_back(z);
  }
  return traj;
}

Trajectory skew_product(const Trajectory& z1, const Trajectory& z2) {
  if (z1.times.size() != z2.times.size() || z1.times != z2.times)
    throw std::invalid_argument("skew_product: time grids differ");
  const std::size_t n = z1.times.size();
  if (n < 2) throw std::invalid_argument("skew_product: too few points");

  std::vector<double> ratio(n), atime(n);
  for (std::size_t i = 0; i < n; ++i) {
    double denom = z1.values[i] + z2.values[i];
    if (!(denom > 0.0))
      throw std::runtime_error(
          "skew_product: Z1 + Z2 hit 0, time change undefined");
    ratio[i] = z1.values[i] / denom;
  }
  atime[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double f0 = 1.0 / (z1.values[i - 1] + z2.values[i - 1]);
    double f1 = 1.0 / (z1.values[i] + z2.values[i]);
    atime[i] = atime[i - 1] +
               0.5 * (f0 + f1) * (z1.times[i] - z1.times[i - 1]);
  }

  // even grid in A-time, monotone linear interpolation of (A, ratio)
  Trajectory out;
  out.kind = TrajectoryKind::jacobi_01;
  out.meta = z1.meta;
  out.meta.scheme = "skew_product";
  out.meta.dt = atime.back() / static_cast<double>(n - 1);
  out.times.resize(n);
  out.values.resize(n);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = atime.back() * static_cast<double>(i) /
               static_cast<double>(n - 1);
    while (j + 1 < n - 1 && atime[j + 1] < s) ++j;
    double w = (s - atime[j]) / (atime[j + 1] - atime[j]);
    w = std::clamp(w, 0.0, 1.0);
    out.times[i] = s;
    out.values[i] = (1.0 - w) * ratio[j] + w * ratio[j + 1];
  }
  return out;
}

void write_trajectory(const Trajectory& traj, const std::string& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  csv << "t,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    csv << traj.times[i] << ',' << traj.values[i] << '\n';

  nlohmann::json meta = {
      {"kind", kind_name(traj.kind)},
      {"scheme", traj.meta.scheme},
      {"seed", traj.meta.seed},
      {"dt", traj.meta.dt},
      {"b", traj.meta.b},
      {"c", traj.meta.c},
      {"dim", traj.meta.dim},
      {"start", traj.meta.start},
  };
  std::ofstream side(csv_path + ".json");
  if (!side) throw std::runtime_error("cannot open " + csv_path + ".json");
  side << meta.dump(2) << '\n';
}

Trajectory read_trajectory(const std::string& csv_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  Trajectory traj;
  std::string line;
  std::getline(csv, line);  // header
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string t, v;
    std::getline(ss, t, ',');
    std::getline(ss, v, ',');
    traj.times.push_back(std::stod(t));
    traj.values.push_back(std::stod(v));
  }

  std::ifstream side(csv_path + ".json");
  if (side) {
    nlohmann::json meta = nlohmann::json::parse(side);
    traj.kind = kind_from_name(meta.value("kind", "jacobi_pm1"));
    traj.meta.scheme = meta.value("scheme", "");
    traj.meta.seed = meta.value("seed", std::uint64_t{0});
    traj.meta.dt = meta.value("dt", 0.0);
    traj.meta.b = meta.value("b", 0.0);
    traj.meta.c = meta.value("c", 0.0);
    traj.meta.dim = meta.value("dim", 0.0);
    traj.meta.start = meta.value("start", 0.0);
  } else {
    traj.kind = TrajectoryKind::jacobi_pm1;
  }
  return traj;
}

}  // namespace jacobi
