// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// An optional list of criterion numbers on the command line restricts the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jacobi/harness.hpp"
#include "jacobi/inference.hpp"
#include "jacobi/ldp.hpp"
#include "jacobi/levy.hpp"
#include "jacobi/quadrature.hpp"
#include "jacobi/semigroup.hpp"
#include "jacobi/sim.hpp"
#include "jacobi/specfun.hpp"

using namespace jacobi;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool (*run)(std::string& detail);
};

// --- 1: special functions --------------------------------------------------

// terminating-2F1 definition of P_n, summed in quad precision (the
// alternating series cancels ~10 digits at n=20 in plain doubles)
double jacobi_poly_2f1(unsigned n, const JacobiParams& p, double x) {
  // every factor is formed in quad: a double-rounded factor near the
  // cancellation peak would cost ~1e-6 of the final value at n=20
  __float128 z = ((__float128)1 - x) / 2;
  __float128 term = 1, sum = 1;
  for (unsigned k = 0; k < n; ++k) {
    term *= ((__float128)k - n) *
            ((__float128)n + p.alpha() + (__float128)p.beta() + 1 + k) /
            (((__float128)p.alpha() + 1 + k) * (k + 1)) * z;
    sum += term;
  }
  double coeff = pochhammer(p.alpha() + 1.0, n) / std::tgamma(n + 1.0);
  return coeff * (double)sum;
}

bool ac1(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  const double xs[9] = {-0.95, -0.7, -0.4, -0.1, 0.0, 0.2, 0.5, 0.8, 0.95};
  for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {0.5, 1.2}, {-0.3, 0.8}}) {
    JacobiParams p(alpha, beta);
    for (unsigned n = 0; n <= 20; ++n) {
      for (double x : xs) {
        double ref = jacobi_poly_2f1(n, p, x);
        double got = jacobi_poly(n, p, x);
        worst = std::max(worst,
                         std::abs(got - ref) / (std::abs(ref) + 1.0));
      }
    }
  }
  if (worst >= 1e-10) {
    detail = "recurrence vs 2F1 worst rel err " + std::to_string(worst);
    return false;
  }
  double worst_quad = 0.0;
  JacobiParams p(0.5, 1.2);
  for (unsigned m = 0; m <= 5; ++m) {
    for (unsigned n = m; n <= 5; ++n) {
      double quad = integrate_tanh_sinh(
          [&](double y) {
            return jacobi_poly(m, p, y) * jacobi_poly(n, p, y) *
                   stationary_density(y, p);
          },
          -1.0, 1.0, 1e-13);
      double want = m == n ? jacobi_norm(n, p) : 0.0;
      worst_quad = std::max(worst_quad, std::abs(quad - want));
    }
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  std::ostringstream ss;
  ss << "worst rel " << worst << ", worst quad " << worst_quad << ", "
     << secs << " s";
  detail = ss.str();
  return worst_quad < 1e-8 && secs < 1.0;
}

// --- 2: eigenrelation -------------------------------------------------------

bool ac2(std::string& detail) {
  JacobiParams p(0.5, 1.2);
  const double h = 1e-4;
  double worst = 0.0;
  for (unsigned n = 0; n <= 8; ++n) {
    for (double x = -0.8; x <= 0.81; x += 0.2) {
      double f0 = jacobi_poly(n, p, x);
      double fp = jacobi_poly(n, p, x + h);
      double fm = jacobi_poly(n, p, x - h);
      double lp = (1.0 - x * x) * (fp - 2.0 * f0 + fm) / (h * h) +
                  (p.p() * x + p.q()) * (fp - fm) / (2.0 * h);
      worst = std::max(worst, std::abs(lp + p.lambda(n) * f0) /
                                  (1.0 + std::abs(p.lambda(n) * f0)));
    }
  }
  detail = "worst scaled residual " + std::to_string(worst);
  return worst < 1e-5;
}

// --- 3: Poisson kernel ------------------------------------------------------

bool ac3(std::string& detail) {
  SeriesControl ctrl;
  JacobiParams p(0.3, 0.3);
  double r = 0.5, x = 0.2, y = -0.4;
  double series = poisson_kernel_series(r, x, y, p, 60);
  double closed = poisson_kernel(r, x, y, p, ctrl);
  double ultra = poisson_kernel_ultraspherical(r, x, y, 0.3, ctrl);
  std::ostringstream ss;
  ss << "|closed-series| " << std::abs(closed - series) << ", |ultra-closed| "
     << std::abs(ultra - closed);
  detail = ss.str();
  return std::abs(closed - series) < 1e-8 && std::abs(ultra - closed) < 1e-8;
}

// --- 4: Laplace identities --------------------------------------------------

bool ac4(std::string& detail) {
  SeriesControl ctrl;
  double worst = 0.0;
  for (double h : {1.0, 2.5, 4.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      double lhs = integrate_zero_inf(
          [&](double s) {
            return std::exp(-t * t / 8.0 * s) * density_C(h, s, ctrl);
          },
          1e-12);
      double rhs = std::pow(1.0 / std::cosh(t / 2.0), h);
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
  }
  for (double t : {0.5, 1.0, 2.0}) {
    double lhs = integrate_zero_inf(
        [&](double s) {
          return std::exp(-t * t / 8.0 * s) * density_T1(s, ctrl);
        },
        1e-12);
    double rhs = std::tanh(t / 2.0) / (t / 2.0);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  {
    double h = 1.5, t = 1.0;
    double lhs = integrate_zero_inf(
        [&](double s) {
          return std::exp(-t * t / 8.0 * s) * conv_T1_C(h, s, ctrl);
        },
        1e-10);
    double rhs = std::tanh(t / 2.0) / (t / 2.0) *
                 std::pow(1.0 / std::cosh(t / 2.0), h);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  detail = "worst rel residual " + std::to_string(worst);
  return worst < 1e-6;
}

// --- 5: density route agreement --------------------------------------------

bool ac5(std::string& detail) {
  SeriesControl ctrl;
  double worst_routes = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    for (int i = 1; i <= 5; ++i) {
      for (int k = 1; k <= 5; ++k) {
        double x = -1.0 + 2.0 * i / 6.0;
        double y = -1.0 + 2.0 * k / 6.0;
        {
          JacobiParams p(0.5, 0.8);
          KernelPoint pt(t, x, y);
          worst_routes = std::max(
              worst_routes, std::abs(density_spectral(pt, p, ctrl) -
                                     density_convolution(pt, p, ctrl)));
        }
        {
          JacobiParams p(0.5, 0.5);
          KernelPoint pt(t, x, y);
          double spec = density_spectral(pt, p, ctrl);
          worst_routes = std::max(
              worst_routes,
              std::abs(spec - density_ultraspherical(pt, 0.5, ctrl)));
        }
      }
    }
  }
  if (worst_routes >= 1e-6) {
    detail = "route disagreement " + std::to_string(worst_routes);
    return false;
  }

  JacobiParams p(0.5, 0.8);
  double s = 0.5, t = 0.7, x = 0.2, y = -0.1;
  double ck = std::abs(
      integrate_tanh_sinh(
          [&](double z) {
            return density_spectral(KernelPoint(s, x, z), p, ctrl) *
                   density_spectral(KernelPoint(t, z, y), p, ctrl);
          },
          -1.0, 1.0, 1e-11) -
      density_spectral(KernelPoint(s + t, x, y), p, ctrl));

  double worst_db = 0.0;
  for (auto [xx, yy] : {std::pair{0.2, -0.4}, {0.6, 0.1}, {-0.3, -0.7}}) {
    worst_db = std::max(
        worst_db,
        std::abs(stationary_density(xx, p) *
                     density_spectral(KernelPoint(1.0, xx, yy), p, ctrl) -
                 stationary_density(yy, p) *
                     density_spectral(KernelPoint(1.0, yy, xx), p, ctrl)));
  }

  double mass = integrate_tanh_sinh(
      [&](double yy) {
        return density_spectral(KernelPoint(1.0, 0.3, yy), p, ctrl);
      },
      -1.0, 1.0, 1e-11);

  double stat_gap = 0.0;
  for (double yy = -0.9; yy <= 0.91; yy += 0.15)
    stat_gap = std::max(
        stat_gap, std::abs(density_spectral(KernelPoint(40.0, 0.2, yy), p, ctrl) -
                           stationary_density(yy, p)));

  std::ostringstream ss;
  ss << "routes " << worst_routes << ", CK " << ck << ", balance " << worst_db
     << ", |mass-1| " << std::abs(mass - 1.0) << ", stationarity " << stat_gap;
  detail = ss.str();
  return ck < 1e-5 && worst_db < 1e-8 && std::abs(mass - 1.0) < 1e-8 &&
         stat_gap < 1e-8;
}

// --- 6: rate identities -----------------------------------------------------

bool ac6(std::string& detail) {
  const double b = -3.0;
  bool ok = true;
  std::ostringstream ss;

  double xb = x0(b);
  ok = ok && std::abs(xb - (1.0 - std::sqrt(28.0)) / 3.0) < 1e-12;
  ok = ok && std::abs(rate_J(-2.0, b).value - 0.25) < 1e-12;
  double phi1 = (7.6 + std::sqrt(9.76)) / 2.0;
  ok = ok && std::abs(rate_J(-1.2, b).value - (0.8 + std::sqrt(2.44))) < 1e-10;
  ok = ok && std::abs(rate_J(-1.2, b).value - (b + phi1)) < 1e-10;

  double quad = -0.25 * (xb - b) * (xb - b) / (xb + 1.0);
  double lin = xb + 2.0 + std::sqrt((b - xb) * (b - xb) + 4.0 * (xb + 1.0));
  ok = ok && std::abs(quad + xb) < 1e-10 && std::abs(lin + xb) < 1e-10;

  double h = 1e-6;
  double dm = (rate_J(xb, b).value - rate_J(xb - h, b).value) / h;
  double dp = (rate_J(xb + h, b).value - rate_J(xb, b).value) / h;
  ok = ok && std::abs(dm - dp) < 1e-4;

  double phi_m = (-2.0 + 1.0) / 2.0 - (b + 1.0) * (b + 1.0) / (2.0 * (-2.0 + 1.0));
  ok = ok && std::abs(Lambda(phi_m, -2.0, b) + rate_J(-2.0, b).value) < 1e-12;

  double worst_dual = 0.0;
  for (double nu : {0.5, 1.0, 2.0}) {
    worst_dual = std::max(worst_dual, std::abs(x0(-(nu + 1.0)) + x1(nu) + 1.0));
    for (double x = -0.5; x <= 3.0; x += 0.25) {
      if (std::abs(x) < 1e-9) continue;
      worst_dual = std::max(
          worst_dual, std::abs(rate_I(x, nu).value -
                               rate_J(-(x + 1.0), -(nu + 1.0)).value));
    }
  }
  ok = ok && worst_dual < 1e-12;

  ss << "x0 " << xb << ", d+- " << dm << "/" << dp << ", duality worst "
     << worst_dual;
  detail = ss.str();
  return ok;
}

// --- 7: estimator consistency -----------------------------------------------

bool ac7(std::string& detail) {
  const double b = -2.0, t = 50.0, dt = 1e-3;
  const unsigned n = 200;
  double sum = 0.0, sumsq = 0.0;
  Trajectory first;
  for (unsigned i = 0; i < n; ++i) {
    auto traj = simulate_jacobi(b, 0.0, 0.0, t, dt, 20240801, i);
    if (i == 0) first = traj;
    double est = mle_b(traj).estimate;
    sum += est;
    sumsq += est * est;
  }
  double mean = sum / n;
  double se = std::sqrt((sumsq / n - mean * mean) / n);

  double bhat = mle_b(first).estimate;
  double nuhat = nu_hat(first).estimate;
  bool identity = std::abs(nuhat - (-bhat - 1.0)) < 1e-12;

  // Girsanov argmax: the log-likelihood is an exact quadratic in b, so the
  // three-point vertex formula recovers the maximizer to rounding
  double l0 = girsanov_loglik(first, bhat - 0.5, -1.0);
  double l1 = girsanov_loglik(first, bhat, -1.0);
  double l2 = girsanov_loglik(first, bhat + 0.5, -1.0);
  double vertex = bhat + 0.25 * (l0 - l2) / (l0 - 2.0 * l1 + l2);
  bool argmax_ok = std::abs(vertex - bhat) < 1e-10;

  std::ostringstream ss;
  ss << "mean " << mean << " (se " << se << "), nu identity "
     << (identity ? "ok" : "BAD") << ", |argmax-bhat| "
     << std::abs(vertex - bhat);
  detail = ss.str();
  return std::abs(mean - b) < 3.0 * se && identity && argmax_ok;
}

// --- 8: MC LDP --------------------------------------------------------------

bool ac8(std::string& detail) {
  ExperimentConfig cfg;
  cfg.b = -3.0;
  cfg.x_targets = {-2.0};
  cfg.t_grid = {10.0, 20.0, 40.0};
  // tail prefactor is ~0.07, so P(t=40) ~ 3e-6: 2e6 paths keep every cell
  // populated.  Ito mode: the pathwise functional picks up an O(dt) Euler
  // discretization bias that flattens the decay.
  cfg.n_paths = 2000000;
  cfg.dt = 0.01;
  cfg.seed = 31337;
  cfg.n_threads = 1;
  cfg.estimator_mode = EstimatorMode::stochastic_integral;
  auto res = run_ldp_experiment(cfg);

  bool no_zero = true;
  for (const auto& cell : res.cells) no_zero = no_zero && cell.count > 0;
  double slope = res.slope[0];
  double target = -rate_J(-2.0, -3.0).value;  // -0.25
  std::ostringstream ss;
  ss << "slope " << slope << " (se " << res.slope_se[0] << "), target "
     << target << ", counts";
  for (const auto& cell : res.cells) ss << ' ' << cell.count;
  detail = ss.str();
  return no_zero && std::abs(slope - target) < 0.2 * std::abs(target);
}

// --- 9: cgf convergence -----------------------------------------------------

bool ac9(std::string& detail) {
  const double phi = 1.0, x = -2.0, b = -3.0;
  double limit = Lambda(phi, x, b);
  double d10 = std::abs(lambda_t_numeric(phi, x, b, 10.0) - limit);
  double d40 = std::abs(lambda_t_numeric(phi, x, b, 40.0) - limit);
  std::ostringstream ss;
  ss << "|diff| t=10: " << d10 << ", t=40: " << d40;
  detail = ss.str();
  return d40 < d10;
}

// --- 10: determinism --------------------------------------------------------

std::string slurp(const std::string& path) {
  std::string out;
  if (FILE* f = std::fopen(path.c_str(), "rb")) {
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
    std::fclose(f);
  }
  return out;
}

bool ac10(std::string& detail) {
  auto t1 = simulate_jacobi(-2.0, 0.0, 0.0, 2.0, 1e-3, 7);
  auto t2 = simulate_jacobi(-2.0, 0.0, 0.0, 2.0, 1e-3, 7);
  write_trajectory(t1, "acc_traj_a.csv");
  write_trajectory(t2, "acc_traj_b.csv");
  bool files_ok = slurp("acc_traj_a.csv") == slurp("acc_traj_b.csv") &&
                  slurp("acc_traj_a.csv.json") == slurp("acc_traj_b.csv.json");
  for (const char* f : {"acc_traj_a.csv", "acc_traj_b.csv",
                        "acc_traj_a.csv.json", "acc_traj_b.csv.json"})
    std::remove(f);

  ExperimentConfig cfg;
  cfg.b = -2.0;
  cfg.x_targets = {-1.5};
  cfg.t_grid = {1.0, 2.0};
  cfg.n_paths = 500;
  cfg.dt = 0.02;
  cfg.seed = 99;
  cfg.n_threads = 1;
  auto r1 = run_ldp_experiment(cfg);
  cfg.n_threads = 4;
  auto r4 = run_ldp_experiment(cfg);
  bool counts_ok = r1.cells.size() == r4.cells.size();
  for (std::size_t i = 0; counts_ok && i < r1.cells.size(); ++i)
    counts_ok = r1.cells[i].count == r4.cells[i].count;

  detail = std::string("files ") + (files_ok ? "identical" : "DIFFER") +
           ", MC counts " + (counts_ok ? "identical" : "DIFFER");
  return files_ok && counts_ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "special functions vs 2F1 oracle + orthogonality", ac1},
      {2, "generator eigenrelation", ac2},
      {3, "Poisson kernel closed forms", ac3},
      {4, "Laplace transform identities", ac4},
      {5, "density route agreement + kernel properties", ac5},
      {6, "rate function identities (b=-3)", ac6},
      {7, "estimator consistency", ac7},
      {8, "MC large-deviation slope", ac8},
      {9, "finite-t cgf convergence", ac9},
      {10, "seed determinism", ac10},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << "AC" << c.id << " " << c.name << ": "
              << (pass ? "PASS" : "FAIL") << " (" << detail << ")"
              << std::endl;
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
