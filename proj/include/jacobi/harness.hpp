#ifndef JACOBI_HARNESS_HPP
#define JACOBI_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jacobi/inference.hpp"

namespace jacobi {

struct ExperimentConfig {
  double b = -3.0;
  std::vector<double> x_targets;
  std::vector<double> t_grid;
  unsigned n_paths = 100;
  double dt = 1e-2;
  std::uint64_t seed = 0;
  EstimatorMode estimator_mode = EstimatorMode::pathwise;
  unsigned n_threads = 1;  // partitioning only; results are thread-count invariant

  void validate() const;
  std::string config_hash() const;
};

// One (x, t) cell of an experiment.
struct CellResult {
  double x;
  double t;
  std::uint64_t count;     // tail events among n_paths
  unsigned n_paths;
  bool upper_tail;         // counted {est >= x} (else {est <= x})
  double log_prob;         // log(count/n_paths); NaN when count == 0
  double se_log_prob;      // binomial delta-method SE of log_prob
  std::string label;       // estimator family tag (duality experiment)
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  // WLS slope of log_prob on t per x target, with standard error
  std::vector<double> x_targets;
  std::vector<double> slope;
  std::vector<double> slope_se;
  std::vector<double> rate_closed_form;  // -J_b(x) (or -I_nu) for comparison
  std::string config_hash;
  double wall_seconds = 0.0;
};

// Simulates n_paths Jacobi paths per t (drift b, c=0, started at 0),
// computes the drift MLE, counts tail events on the side given by
// sign(x - b), and regresses log P-hat on t.
ExperimentResult run_ldp_experiment(const ExperimentConfig& cfg);

// Duality experiment: nu_hat from Jacobi paths with b = -(nu+1) at
// t = log(u), and the Bessel MLE from squared-Bessel paths of dimension
// 2(nu+1) started at 1; both tails compared to I_nu(x).
ExperimentResult run_duality_experiment(double nu,
                                        const std::vector<double>& x_targets,
                                        const std::vector<double>& u_grid,
                                        unsigned n_paths, double dt,
                                        std::uint64_t seed,
                                        unsigned n_threads = 1);

struct CgfConvergenceRow {
  double phi;
  double t;
  double lambda_t;
  double lambda_limit;
  double abs_diff;
};

// Table of Lambda_t vs the limit Lambda over (phi, t) grids.
std::vector<CgfConvergenceRow> run_cgf_convergence(
    double b, double x, const std::vector<double>& phi_grid,
    const std::vector<double>& t_grid);

// Weighted least squares fit of y on t; returns {slope, slope_se}.
std::pair<double, double> wls_slope(const std::vector<double>& t,
                                    const std::vector<double>& y,
                                    const std::vector<double>& w);

// JSON-lines persistence, one record per cell.
void write_experiment_jsonl(const ExperimentResult& res,
                            const std::string& path);

}  // namespace jacobi

#endif  // JACOBI_HARNESS_HPP
