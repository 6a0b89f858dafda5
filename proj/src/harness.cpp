#include "jacobi/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "jacobi/ldp.hpp"
#include "jacobi/sim.hpp"

namespace jacobi {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// single Jacobi path (c = 0, y0 = 0) with the drift MLE accumulated online
double simulate_mle_b(double b, double t, double dt, std::uint64_t seed,
                      std::uint64_t stream_index, EstimatorMode mode) {
  auto rng = make_stream(seed, stream_index);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n_steps = static_cast<std::size_t>(std::llround(t / dt));
  const double sqdt = std::sqrt(dt);
  const double cap = 1.0 - 1e-12;

  double y = 0.0;
  double denom = 0.0;      // trapezoid of Y^2/(1-Y^2)
  double time_int = 0.0;   // trapezoid of (1+Y^2)/(1-Y^2)
  double ito = 0.0;        // left-point sum of Y/(1-Y^2) dY
  for (std::size_t i = 0; i < n_steps; ++i) {
    double y2 = y * y;
    double g_denom = y2 / (1.0 - y2);
    double g_time = (1.0 + y2) / (1.0 - y2);
    double ynew = y + std::sqrt(std::max(0.0, 1.0 - y2)) * sqdt * gauss(rng) +
                  b * y * dt;
    if (ynew > cap) ynew = cap;
    if (ynew < -cap) ynew = -cap;
    ito += y / (1.0 - y2) * (ynew - y);
    double y2n = ynew * ynew;
    denom += 0.5 * dt * (g_denom + y2n / (1.0 - y2n));
    time_int += 0.5 * dt * (g_time + (1.0 + y2n) / (1.0 - y2n));
    y = ynew;
  }
  double numer;
  if (mode == EstimatorMode::pathwise) {
    numer = -0.5 * std::log(1.0 - y * y) - 0.5 * time_int;
  } else {
    numer = ito;
  }
  return numer / denom;
}

// squared-Bessel path from 1 with the index MLE accumulated online
double simulate_bessel_nu(double dim, double t, double dt, std::uint64_t seed,
                          std::uint64_t stream_index) {
  auto rng = make_stream(seed, stream_index);
  const auto n_steps = static_cast<std::size_t>(std::llround(t / dt));
  double z = 1.0;
  double denom = 0.0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    double znew = squared_bessel_step(z, dim, dt, rng);
    if (znew < 1e-300) znew = 1e-300;
    denom += 0.5 * dt * (1.0 / z + 1.0 / znew);
    z = znew;
  }
  return std::log(z) / (2.0 * denom);
}

// run `n_paths` estimator draws in parallel chunks; deterministic per index
template <typename Fn>
std::vector<double> parallel_estimates(unsigned n_paths, unsigned n_threads,
                                       Fn estimate_one) {
  std::vector<double> est(n_paths);
  if (n_threads <= 1) {
    for (unsigned i = 0; i < n_paths; ++i) est[i] = estimate_one(i);
    return est;
  }
  std::vector<std::thread> workers;
  unsigned chunk = (n_paths + n_threads - 1) / n_threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    unsigned lo = w * chunk;
    unsigned hi = std::min(n_paths, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      for (unsigned i = lo; i < hi; ++i) est[i] = estimate_one(i);
    });
  }
  for (auto& th : workers) th.join();
  return est;
}

CellResult make_cell(double x, double t, bool upper_tail,
                     const std::vector<double>& estimates) {
  CellResult cell;
  cell.x = x;
  cell.t = t;
  cell.upper_tail = upper_tail;
  cell.n_paths = static_cast<unsigned>(estimates.size());
  std::uint64_t count = 0;
  for (double e : estimates)
    if (upper_tail ? (e >= x) : (e <= x)) ++count;
  cell.count = count;
  if (count == 0) {
    cell.log_prob = std::nan("");
    cell.se_log_prob = std::nan("");
  } else {
    double p = static_cast<double>(count) / cell.n_paths;
    cell.log_prob = std::log(p);
    cell.se_log_prob = std::sqrt((1.0 - p) / (cell.n_paths * p));
  }
  return cell;
}

void fit_slopes(ExperimentResult& res, const std::vector<double>& x_targets,
                const std::string& label = "") {
  for (double x : x_targets) {
    std::vector<double> ts, ys, ws;
    for (const auto& cell : res.cells) {
      if (cell.x == x && cell.label == label && !std::isnan(cell.log_prob)) {
        ts.push_back(cell.t);
        ys.push_back(cell.log_prob);
        ws.push_back(1.0 / (cell.se_log_prob * cell.se_log_prob));
      }
    }
    if (ts.size() >= 2) {
      auto [s, se] = wls_slope(ts, ys, ws);
      res.slope.push_back(s);
      res.slope_se.push_back(se);
    } else {
      res.slope.push_back(std::nan(""));
      res.slope_se.push_back(std::nan(""));
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_paths < 100)
    throw std::domain_error("ExperimentConfig: n_paths >= 100 required");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::domain_error("ExperimentConfig: t_grid must increase");
  if (!(dt > 0.0)) throw std::domain_error("ExperimentConfig: dt > 0");
}

std::string ExperimentConfig::config_hash() const {
  std::ostringstream ss;
  ss << std::setprecision(17) << b << '|' << dt << '|' << n_paths << '|'
     << seed << '|' << static_cast<int>(estimator_mode);
  for (double x : x_targets) ss << '|' << x;
  for (double t : t_grid) ss << '|' << t;
  std::ostringstream out;
  out << std::hex << fnv1a(ss.str());
  return out.str();
}

ExperimentResult run_ldp_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!(cfg.b <= -1.0))
    throw std::domain_error("run_ldp_experiment: requires b <= -1");
  auto t_start = std::chrono::steady_clock::now();

  ExperimentResult res;
  res.config_hash = cfg.config_hash();
  res.x_targets = cfg.x_targets;
  for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
    double t = cfg.t_grid[ti];
    std::uint64_t cell_seed = cfg.seed + 0x100000001b3ULL * (ti + 1);
    auto estimates = parallel_estimates(
        cfg.n_paths, cfg.n_threads, [&](unsigned i) {
          return simulate_mle_b(cfg.b, t, cfg.dt, cell_seed, i,
                                cfg.estimator_mode);
        });
    for (double x : cfg.x_targets)
      res.cells.push_back(make_cell(x, t, x > cfg.b, estimates));
  }
  fit_slopes(res, cfg.x_targets);
  for (double x : cfg.x_targets)
    res.rate_closed_form.push_back(-rate_J(x, cfg.b).value);

  res.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return res;
}

ExperimentResult run_duality_experiment(double nu,
                                        const std::vector<double>& x_targets,
                                        const std::vector<double>& u_grid,
                                        unsigned n_paths, double dt,
                                        std::uint64_t seed,
                                        unsigned n_threads) {
  if (!(nu >= 0.0))
    throw std::domain_error("run_duality_experiment: requires nu >= 0");
  auto t_start = std::chrono::steady_clock::now();
  double b = -(nu + 1.0);
  double dim = 2.0 * (nu + 1.0);

  ExperimentResult res;
  res.x_targets = x_targets;
  {
    ExperimentConfig tag;
    tag.b = b;
    tag.x_targets = x_targets;
    for (double u : u_grid) tag.t_grid.push_back(std::log(u));
    tag.n_paths = n_paths;
    tag.dt = dt;
    tag.seed = seed;
    res.config_hash = tag.config_hash();
  }

  for (std::size_t ui = 0; ui < u_grid.size(); ++ui) {
    double t = std::log(u_grid[ui]);
    std::uint64_t s1 = seed + 0x9E3779B9ULL * (ui + 1);
    std::uint64_t s2 = seed + 0x85EBCA6BULL * (ui + 1);
    auto nu_jacobi = parallel_estimates(n_paths, n_threads, [&](unsigned i) {
      return -simulate_mle_b(b, t, dt, s1, i, EstimatorMode::pathwise) - 1.0;
    });
    auto nu_bessel = parallel_estimates(n_paths, n_threads, [&](unsigned i) {
      return simulate_bessel_nu(dim, t, dt, s2, i);
    });
    for (double x : x_targets) {
      auto cell_j = make_cell(x, t, x > nu, nu_jacobi);
      cell_j.label = "jacobi_nu_hat";
      res.cells.push_back(cell_j);
      auto cell_b = make_cell(x, t, x > nu, nu_bessel);
      cell_b.label = "bessel_mle";
      res.cells.push_back(cell_b);
    }
  }
  fit_slopes(res, x_targets, "jacobi_nu_hat");
  fit_slopes(res, x_targets, "bessel_mle");
  for (double x : x_targets)
    res.rate_closed_form.push_back(-rate_I(x, nu).value);
  res.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return res;
}

std::vector<CgfConvergenceRow> run_cgf_convergence(
    double b, double x, const std::vector<double>& phi_grid,
    const std::vector<double>& t_grid) {
  std::vector<CgfConvergenceRow> table;
  for (double phi : phi_grid) {
    double limit = Lambda(phi, x, b);
    for (double t : t_grid) {
      CgfConvergenceRow row{phi, t, std::nan(""), limit, std::nan("")};
      try {
        row.lambda_t = lambda_t_numeric(phi, x, b, t);
        row.abs_diff = std::abs(row.lambda_t - limit);
      } catch (const std::exception&) {
        // quadrature/series failure: reported as NaN in the cell
      }
      table.push_back(row);
    }
  }
  return table;
}

std::pair<double, double> wls_slope(const std::vector<double>& t,
                                    const std::vector<double>& y,
                                    const std::vector<double>& w) {
  if (t.size() != y.size() || t.size() != w.size() || t.size() < 2)
    throw std::invalid_argument("wls_slope: need >= 2 matched points");
  double sw = 0, swt = 0, swy = 0, swtt = 0, swty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sw += w[i];
    swt += w[i] * t[i];
    swy += w[i] * y[i];
    swtt += w[i] * t[i] * t[i];
    swty += w[i] * t[i] * y[i];
  }
  double det = sw * swtt - swt * swt;
  double slope = (sw * swty - swt * swy) / det;
  double se = std::sqrt(sw / det);
  return {slope, se};
}

void write_experiment_jsonl(const ExperimentResult& res,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (const auto& cell : res.cells) {
    nlohmann::json j = {
        {"config_hash", res.config_hash},
        {"x", cell.x},
        {"t", cell.t},
        {"count", cell.count},
        {"n_paths", cell.n_paths},
        {"upper_tail", cell.upper_tail},
        {"label", cell.label},
    };
    if (!std::isnan(cell.log_prob)) {
      j["log_prob"] = cell.log_prob;
      j["se_log_prob"] = cell.se_log_prob;
    }
    out << j.dump() << '\n';
  }
  for (std::size_t i = 0; i < res.slope.size(); ++i) {
    std::size_t xi = res.x_targets.empty() ? 0 : i % res.x_targets.size();
    nlohmann::json j = {
        {"config_hash", res.config_hash},
        {"record", "slope"},
        {"x", res.x_targets.empty() ? 0.0 : res.x_targets[xi]},
        {"slope", res.slope[i]},
        {"slope_se", res.slope_se[i]},
        {"rate_closed_form", xi < res.rate_closed_form.size()
                                 ? res.rate_closed_form[xi]
                                 : 0.0},
    };
    out << j.dump() << '\n';
  }
}

}  // namespace jacobi
