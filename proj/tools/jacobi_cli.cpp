// jacobi-ldp: Jacobi diffusion densities, simulation, estimation and
// large-deviation rate functions behind a single subcommand-style binary.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 numeric failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jacobi/harness.hpp"
#include "jacobi/inference.hpp"
#include "jacobi/ldp.hpp"
#include "jacobi/levy.hpp"
#include "jacobi/quadrature.hpp"
#include "jacobi/semigroup.hpp"
#include "jacobi/sim.hpp"
#include "jacobi/specfun.hpp"

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// output plumbing

struct OutputSpec {
  std::string format = "csv";  // csv | json
  std::string path;            // empty: stdout
};

void add_output_flags(CLI::App* cmd, OutputSpec& out) {
  cmd->add_option("--format", out.format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", out.path, "Output file (default: stdout)");
}

std::string fmt17(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

// rows given as a json array of flat objects; CSV columns follow `header`
void emit_table(const std::vector<std::string>& header, const json& rows,
                const OutputSpec& out) {
  std::ostringstream body;
  if (out.format == "json") {
    body << rows.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < header.size(); ++i)
      body << (i ? "," : "") << header[i];
    body << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body << ',';
        const auto& cell = row.at(header[i]);
        if (cell.is_number_float())
          body << fmt17(cell.get<double>());
        else if (cell.is_string())
          body << cell.get<std::string>();
        else
          body << cell.dump();
      }
      body << '\n';
    }
  }
  if (out.path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(out.path);
    if (!f) throw std::runtime_error("cannot open " + out.path);
    f << body.str();
  }
}

// ---------------------------------------------------------------------------
// parameter dictionaries: exactly one pair among the four

struct ParamFlags {
  std::optional<double> alpha, beta, p, q, b, c, d, dprime;
};

void add_param_flags(CLI::App* cmd, ParamFlags& pf) {
  auto opt = [&](const char* name, std::optional<double>& slot,
                 const char* help) { cmd->add_option(name, slot, help); };
  opt("--alpha", pf.alpha, "Jacobi weight exponent alpha > -1");
  opt("--beta", pf.beta, "Jacobi weight exponent beta > -1");
  opt("--p", pf.p, "Generator drift slope p");
  opt("--q", pf.q, "Generator drift offset q");
  opt("--b", pf.b, "SDE drift slope b = p/2");
  opt("--c", pf.c, "SDE drift offset c = q/2");
  opt("--d", pf.d, "[0,1]-model dimension d = 2(beta+1)");
  opt("--dprime", pf.dprime, "[0,1]-model dimension d' = 2(alpha+1)");
}

jacobi::JacobiParams resolve_params(const ParamFlags& pf) {
  int pairs = 0;
  pairs += pf.alpha || pf.beta ? 1 : 0;
  pairs += pf.p || pf.q ? 1 : 0;
  pairs += pf.b || pf.c ? 1 : 0;
  pairs += pf.d || pf.dprime ? 1 : 0;
  if (pairs != 1)
    throw UsageError(
        "exactly one parameter pair required: --alpha/--beta, --p/--q, "
        "--b/--c, or --d/--dprime");
  try {
    if (pf.alpha || pf.beta) {
      if (!pf.alpha || !pf.beta) throw UsageError("--alpha and --beta go together");
      return jacobi::JacobiParams(*pf.alpha, *pf.beta);
    }
    if (pf.p || pf.q) {
      if (!pf.p || !pf.q) throw UsageError("--p and --q go together");
      return jacobi::JacobiParams::from_pq(*pf.p, *pf.q);
    }
    if (pf.b || pf.c) {
      if (!pf.b || !pf.c) throw UsageError("--b and --c go together");
      return jacobi::JacobiParams::from_bc(*pf.b, *pf.c);
    }
    if (!pf.d || !pf.dprime) throw UsageError("--d and --dprime go together");
    return jacobi::JacobiParams::from_dd(*pf.d, *pf.dprime);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------
// verify: named identity suites

struct CheckResult {
  std::string suite;
  std::string name;
  double residual;
  double tol;
  bool pass;
};

using CheckSink = std::function<void(const std::string&, const std::string&,
                                     double, double)>;

void suite_laplace(const CheckSink& check) {
  jacobi::SeriesControl ctrl;
  for (double h : {1.0, 2.5, 4.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      double lhs = jacobi::integrate_zero_inf(
          [&](double s) {
            return std::exp(-t * t / 8.0 * s) * jacobi::density_C(h, s, ctrl);
          },
          1e-12);
      double rhs = std::pow(1.0 / std::cosh(t / 2.0), h);
      std::ostringstream name;
      name << "sech-power transform h=" << h << " t=" << t;
      check("laplace", name.str(), std::abs(lhs - rhs) / rhs, 1e-6);
    }
  }
  for (double t : {0.5, 1.0, 2.0}) {
    double lhs = jacobi::integrate_zero_inf(
        [&](double s) {
          return std::exp(-t * t / 8.0 * s) * jacobi::density_T1(s, ctrl);
        },
        1e-12);
    double rhs = std::tanh(t / 2.0) / (t / 2.0);
    std::ostringstream name;
    name << "tanh transform t=" << t;
    check("laplace", name.str(), std::abs(lhs - rhs) / rhs, 1e-6);
  }
  {
    double h = 1.5, t = 1.0;
    double lhs = jacobi::integrate_zero_inf(
        [&](double s) {
          return std::exp(-t * t / 8.0 * s) * jacobi::conv_T1_C(h, s, ctrl);
        },
        1e-10);
    double rhs = std::tanh(t / 2.0) / (t / 2.0) *
                 std::pow(1.0 / std::cosh(t / 2.0), h);
    check("laplace", "convolution product rule h=1.5 t=1", std::abs(lhs - rhs) / rhs,
          1e-6);
  }
}

void suite_bailey(const CheckSink& check) {
  jacobi::SeriesControl ctrl;
  {
    double b = 1.5, c = 2.5, u = 0.1, v = 0.15;
    double lhs = jacobi::appell_F4(b, c, b, b, u, v, ctrl);
    double omuv = 1.0 - u - v;
    double rhs = std::pow(omuv, -c) *
                 jacobi::hyp2F1(c / 2.0, (c + 1.0) / 2.0, b,
                                4.0 * u * v / (omuv * omuv));
    check("bailey", "F4 reduction to 2F1", std::abs(lhs - rhs), 1e-10);
  }
  {
    jacobi::JacobiParams p(0.3, 0.3);
    double r = 0.5, x = 0.2, y = -0.4;
    double series = jacobi::poisson_kernel_series(r, x, y, p, 60);
    double closed = jacobi::poisson_kernel(r, x, y, p, ctrl);
    check("bailey", "Poisson kernel closed form vs 60-term sum",
          std::abs(closed - series), 1e-8);
    double ultra = jacobi::poisson_kernel_ultraspherical(r, x, y, 0.3, ctrl);
    check("bailey", "ultraspherical reduction", std::abs(ultra - closed), 1e-8);
  }
}

void suite_theta(const CheckSink& check) {
  for (double x : {0.1, 0.37, 1.0, 2.9}) {
    double lhs = jacobi::theta(x);
    double rhs = jacobi::theta(1.0 / x) / std::sqrt(x);
    std::ostringstream name;
    name << "modular identity x=" << x;
    check("theta", name.str(), std::abs(lhs - rhs), 1e-12);
  }
}

void suite_ck(const CheckSink& check) {
  jacobi::SeriesControl ctrl;
  jacobi::JacobiParams p(0.5, 0.8);
  double s = 0.5, t = 0.7, x = 0.2, y = -0.1;
  double conv = jacobi::integrate_tanh_sinh(
      [&](double z) {
        return jacobi::density_spectral(jacobi::KernelPoint(s, x, z), p, ctrl) *
               jacobi::density_spectral(jacobi::KernelPoint(t, z, y), p, ctrl);
      },
      -1.0, 1.0, 1e-11);
  double direct =
      jacobi::density_spectral(jacobi::KernelPoint(s + t, x, y), p, ctrl);
  check("ck", "Chapman-Kolmogorov", std::abs(conv - direct) / direct, 1e-5);
}

void suite_balance(const CheckSink& check) {
  jacobi::SeriesControl ctrl;
  jacobi::JacobiParams p(0.5, 0.8);
  for (auto [x, y] : {std::pair{0.2, -0.4}, {0.6, 0.1}, {-0.3, -0.7}}) {
    double lhs =
        jacobi::stationary_density(x, p) *
        jacobi::density_spectral(jacobi::KernelPoint(1.0, x, y), p, ctrl);
    double rhs =
        jacobi::stationary_density(y, p) *
        jacobi::density_spectral(jacobi::KernelPoint(1.0, y, x), p, ctrl);
    std::ostringstream name;
    name << "detailed balance x=" << x << " y=" << y;
    check("balance", name.str(), std::abs(lhs - rhs) / std::abs(rhs), 1e-8);
  }
}

void suite_duality(const CheckSink& check) {
  double worst_rate = 0.0, worst_x0 = 0.0;
  for (double nu : {0.5, 1.0, 2.0}) {
    worst_x0 = std::max(
        worst_x0, std::abs(jacobi::x0(-(nu + 1.0)) + jacobi::x1(nu) + 1.0));
    for (double x = -0.5; x <= 3.0; x += 0.25) {
      if (std::abs(x) < 1e-9) continue;
      double lhs = jacobi::rate_I(x, nu).value;
      double rhs = jacobi::rate_J(-(x + 1.0), -(nu + 1.0)).value;
      worst_rate = std::max(worst_rate, std::abs(lhs - rhs));
    }
  }
  check("duality", "I_nu(x) = J_{-(nu+1)}(-(x+1)) grid", worst_rate, 1e-12);
  check("duality", "x_0 = -(x_1+1)", worst_x0, 1e-12);
}

int cmd_verify(const std::string& only, std::optional<double> tol,
               const OutputSpec& out) {
  std::vector<CheckResult> results;
  auto sink = [&](const std::string& suite, const std::string& name,
                  double residual, double default_tol) {
    double use_tol = tol ? *tol : default_tol;
    results.push_back({suite, name, residual, use_tol,
                       std::isfinite(residual) && residual < use_tol});
  };
  const std::vector<std::pair<std::string, std::function<void(const CheckSink&)>>>
      suites = {{"laplace", suite_laplace}, {"bailey", suite_bailey},
                {"theta", suite_theta},     {"ck", suite_ck},
                {"balance", suite_balance}, {"duality", suite_duality}};
  bool matched = false;
  for (const auto& [name, fn] : suites) {
    if (!only.empty() && only != name) continue;
    matched = true;
    fn(sink);
  }
  if (!matched) throw UsageError("unknown suite for --only: " + only);

  json rows = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    rows.push_back({{"suite", r.suite},
                    {"identity", r.name},
                    {"residual", r.residual},
                    {"tol", r.tol},
                    {"status", r.pass ? "pass" : "FAIL"}});
  }
  emit_table({"suite", "identity", "residual", "tol", "status"}, rows, out);
  if (!all_pass) {
    for (const auto& r : results)
      if (!r.pass)
        std::cerr << "verification failure: " << r.suite << ": " << r.name
                  << " (residual " << r.residual << " >= " << r.tol << ")\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

unsigned default_threads() {
  if (const char* env = std::getenv("JACOBI_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

void write_mc_outputs(const jacobi::ExperimentResult& res,
                      const std::string& out_prefix) {
  jacobi::write_experiment_jsonl(res, out_prefix + ".jsonl");
  std::ofstream csv(out_prefix + "_summary.csv");
  if (!csv) throw std::runtime_error("cannot open " + out_prefix + "_summary.csv");
  csv << "label,x,slope,slope_se,rate_closed_form\n";
  std::size_t nx = res.x_targets.size();
  for (std::size_t i = 0; i < res.slope.size(); ++i) {
    std::size_t xi = nx ? i % nx : 0;
    // duality results interleave two estimator families
    std::string label =
        res.slope.size() == 2 * nx ? (i < nx ? "jacobi_nu_hat" : "bessel_mle")
                                   : "";
    csv << label << ',' << fmt17(nx ? res.x_targets[xi] : 0.0) << ','
        << fmt17(res.slope[i]) << ',' << fmt17(res.slope_se[i]) << ','
        << fmt17(xi < res.rate_closed_form.size() ? res.rate_closed_form[xi]
                                                  : 0.0)
        << '\n';
  }
}

// flat key=value config file; values override defaults, flags override file
void apply_config_file(const std::string& path,
                       std::map<std::string, std::string>& kv) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file " + path);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line without '=': " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi diffusion densities, estimators and rate functions"};
  app.require_subcommand(1);

  // --- density ---------------------------------------------------------
  auto* density = app.add_subcommand(
      "density", "Transition density by two independent routes on a grid");
  ParamFlags den_pf;
  add_param_flags(density, den_pf);
  double den_t = 0.0;
  unsigned den_grid = 5;
  double den_tol = 1e-6;
  OutputSpec den_out;
  density->add_option("--t", den_t, "Time horizon t > 0")->required();
  density->add_option("--grid", den_grid, "Interior grid points per axis");
  density->add_option("--tol", den_tol, "Route agreement tolerance");
  add_output_flags(density, den_out);

  // --- verify ----------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run the analytic identity suites");
  std::string ver_only;
  std::optional<double> ver_tol;
  OutputSpec ver_out;
  verify->add_option("--only", ver_only,
                     "Single suite: laplace, bailey, theta, ck, balance, duality");
  verify->add_option("--tol", ver_tol, "Override every tolerance");
  add_output_flags(verify, ver_out);

  // --- simulate --------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Simulate an SDE trajectory");
  ParamFlags sim_pf;
  add_param_flags(simulate, sim_pf);
  std::string sim_process = "jacobi";
  double sim_t = 0.0, sim_dt = 1e-3, sim_y0 = 0.0, sim_dim = 2.0, sim_z0 = 1.0;
  std::uint64_t sim_seed = 0, sim_index = 0;
  std::string sim_out = "trajectory.csv";
  simulate->add_option("--process", sim_process, "jacobi or bessel")
      ->check(CLI::IsMember({"jacobi", "bessel"}));
  simulate->add_option("--t", sim_t, "Horizon")->required();
  simulate->add_option("--dt", sim_dt, "Step size");
  simulate->add_option("--y0", sim_y0, "Jacobi start in (-1,1)");
  simulate->add_option("--dim", sim_dim, "Squared-Bessel dimension");
  simulate->add_option("--z0", sim_z0, "Squared-Bessel start >= 0");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("--index", sim_index, "Stream index within the seed");
  simulate->add_option("--out", sim_out, "Trajectory CSV path (+ .json sidecar)");

  // --- estimate --------------------------------------------------------
  auto* estimate = app.add_subcommand(
      "estimate", "Drift / index estimators from a trajectory file");
  std::string est_input, est_which = "mle_b", est_mode = "pathwise";
  OutputSpec est_out;
  estimate->add_option("--input", est_input, "Trajectory CSV")->required();
  estimate->add_option("--estimator", est_which, "mle_b, nu_hat or bessel_nu")
      ->check(CLI::IsMember({"mle_b", "nu_hat", "bessel_nu"}));
  estimate->add_option("--mode", est_mode, "pathwise or ito")
      ->check(CLI::IsMember({"pathwise", "ito"}));
  add_output_flags(estimate, est_out);

  // --- rate ------------------------------------------------------------
  auto* rate = app.add_subcommand("rate", "Rate function J_b or I_nu tables");
  std::optional<double> rate_b, rate_nu;
  std::vector<double> rate_x;
  OutputSpec rate_out;
  rate->add_option("--b", rate_b, "Drift b <= -1 (J_b)");
  rate->add_option("--nu", rate_nu, "Index nu (I_nu)");
  rate->add_option("--x", rate_x, "Evaluation points (repeatable)")->required();
  add_output_flags(rate, rate_out);

  // --- domain ----------------------------------------------------------
  auto* dom_cmd = app.add_subcommand("domain", "Lemma-style cgf domain data");
  double dom_b = 0.0, dom_x = 0.0;
  OutputSpec dom_out;
  dom_cmd->add_option("--b", dom_b, "Drift b <= -1")->required();
  dom_cmd->add_option("--x", dom_x, "Level x")->required();
  add_output_flags(dom_cmd, dom_out);

  // --- mc-ldp ----------------------------------------------------------
  auto* mc_ldp = app.add_subcommand(
      "mc-ldp", "Monte Carlo tail-decay experiment for the drift MLE");
  std::string mcl_config;
  std::map<std::string, std::string> mcl_kv = {
      {"b", "-3"},        {"x", "-2"},   {"t", "10,20,40"},
      {"n-paths", "1000"}, {"dt", "0.01"}, {"seed", "0"},
      {"threads", ""},    {"mode", "pathwise"}};
  mc_ldp->add_option("--config", mcl_config, "key=value config file");
  std::map<std::string, std::string> mcl_flags;
  for (auto& [key, unused] : mcl_kv)
    mc_ldp->add_option("--" + key, mcl_flags[key]);
  std::string mcl_out = "mc_ldp";
  mc_ldp->add_option("--out", mcl_out, "Output prefix (.jsonl, _summary.csv)");

  // --- mc-duality ------------------------------------------------------
  auto* mc_dual = app.add_subcommand(
      "mc-duality", "Jacobi vs squared-Bessel index-estimator experiment");
  std::string mcd_config;
  std::map<std::string, std::string> mcd_kv = {
      {"nu", "1"},         {"x", "2"},    {"u", "7.389056098930650,54.598150033144236"},
      {"n-paths", "1000"}, {"dt", "0.01"}, {"seed", "0"},
      {"threads", ""}};
  mc_dual->add_option("--config", mcd_config, "key=value config file");
  std::map<std::string, std::string> mcd_flags;
  for (auto& [key, unused] : mcd_kv)
    mc_dual->add_option("--" + key, mcd_flags[key]);
  std::string mcd_out = "mc_duality";
  mc_dual->add_option("--out", mcd_out, "Output prefix (.jsonl, _summary.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (density->parsed()) {
      auto params = resolve_params(den_pf);
      if (!(den_t > 0.0)) throw UsageError("--t must be positive");
      if (den_grid < 1) throw UsageError("--grid must be >= 1");
      jacobi::SeriesControl ctrl;
      json rows = json::array();
      bool agree = true;
      for (unsigned i = 0; i < den_grid; ++i) {
        double x = -1.0 + 2.0 * (i + 1.0) / (den_grid + 1.0);
        for (unsigned k = 0; k < den_grid; ++k) {
          double y = -1.0 + 2.0 * (k + 1.0) / (den_grid + 1.0);
          jacobi::KernelPoint pt(den_t, x, y);
          double ps = jacobi::density_spectral(pt, params, ctrl);
          double pc = jacobi::density_convolution(pt, params, ctrl);
          double diff = std::abs(ps - pc);
          agree = agree && diff < den_tol;
          rows.push_back({{"x", x},
                          {"y", y},
                          {"t", den_t},
                          {"p_spectral", ps},
                          {"p_convolution", pc},
                          {"abs_diff", diff}});
        }
      }
      emit_table({"x", "y", "t", "p_spectral", "p_convolution", "abs_diff"},
                 rows, den_out);
      if (!agree) {
        std::cerr << "verification failure: routes disagree beyond " << den_tol
                  << "\n";
        return 1;
      }
      return 0;
    }

    if (verify->parsed()) return cmd_verify(ver_only, ver_tol, ver_out);

    if (simulate->parsed()) {
      jacobi::Trajectory traj;
      if (sim_process == "jacobi") {
        auto params = resolve_params(sim_pf);
        traj = jacobi::simulate_jacobi(params.b(), params.c(), sim_y0, sim_t,
                                       sim_dt, sim_seed, sim_index);
      } else {
        traj = jacobi::simulate_squared_bessel(sim_dim, sim_z0, sim_t, sim_dt,
                                               sim_seed, sim_index);
      }
      jacobi::write_trajectory(traj, sim_out);
      return 0;
    }

    if (estimate->parsed()) {
      auto traj = jacobi::read_trajectory(est_input);
      auto mode = est_mode == "pathwise"
                      ? jacobi::EstimatorMode::pathwise
                      : jacobi::EstimatorMode::stochastic_integral;
      jacobi::EstimateResult res;
      if (est_which == "mle_b")
        res = jacobi::mle_b(traj, mode);
      else if (est_which == "nu_hat")
        res = jacobi::nu_hat(traj);
      else
        res = jacobi::bessel_mle_nu(traj);
      json j = {{"estimator", est_which},
                {"estimate", res.estimate},
                {"numerator", res.numerator},
                {"denominator", res.denominator},
                {"horizon", res.horizon},
                {"mode", res.mode == jacobi::EstimatorMode::pathwise
                             ? "pathwise"
                             : "ito"}};
      if (est_out.path.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::ofstream f(est_out.path);
        if (!f) throw std::runtime_error("cannot open " + est_out.path);
        f << j.dump(2) << '\n';
      }
      return 0;
    }

    if (rate->parsed()) {
      if (rate_b.has_value() == rate_nu.has_value())
        throw UsageError("exactly one of --b (J_b) or --nu (I_nu) required");
      json rows = json::array();
      for (double x : rate_x) {
        auto ev = rate_b ? jacobi::rate_J(x, *rate_b) : jacobi::rate_I(x, *rate_nu);
        rows.push_back(
            {{"x", x},
             {"rate", ev.value},
             {"branch", ev.branch == jacobi::RateBranch::quadratic
                            ? "quadratic"
                            : "linear_tail"}});
      }
      emit_table({"x", "rate", "branch"}, rows, rate_out);
      return 0;
    }

    if (dom_cmd->parsed()) {
      auto dom = jacobi::domain(dom_x, dom_b);
      json row = {{"b", dom.b},
                  {"x", dom.x},
                  {"case", dom.kase == jacobi::DomainCase::i
                               ? "i"
                               : dom.kase == jacobi::DomainCase::ii ? "ii"
                                                                    : "iii"},
                  {"phi0", dom.phi0},
                  {"steep", dom.steep},
                  {"phi1", nullptr}};
      if (dom.phi1) row["phi1"] = *dom.phi1;
      json rows = json::array({row});
      emit_table({"b", "x", "case", "phi0", "phi1", "steep"}, rows, dom_out);
      return 0;
    }

    if (mc_ldp->parsed()) {
      if (!mcl_config.empty()) apply_config_file(mcl_config, mcl_kv);
      for (auto& [key, val] : mcl_flags)
        if (!val.empty()) mcl_kv[key] = val;
      jacobi::ExperimentConfig cfg;
      cfg.b = std::stod(mcl_kv["b"]);
      cfg.x_targets = parse_list(mcl_kv["x"]);
      cfg.t_grid = parse_list(mcl_kv["t"]);
      cfg.n_paths = static_cast<unsigned>(std::stoul(mcl_kv["n-paths"]));
      cfg.dt = std::stod(mcl_kv["dt"]);
      cfg.seed = std::stoull(mcl_kv["seed"]);
      cfg.estimator_mode = mcl_kv["mode"] == "ito"
                               ? jacobi::EstimatorMode::stochastic_integral
                               : jacobi::EstimatorMode::pathwise;
      cfg.n_threads = mcl_kv["threads"].empty()
                          ? default_threads()
                          : static_cast<unsigned>(std::stoul(mcl_kv["threads"]));
      try {
        cfg.validate();
      } catch (const std::domain_error& e) {
        throw UsageError(e.what());
      }
      auto res = jacobi::run_ldp_experiment(cfg);
      write_mc_outputs(res, mcl_out);
      return 0;
    }

    if (mc_dual->parsed()) {
      if (!mcd_config.empty()) apply_config_file(mcd_config, mcd_kv);
      for (auto& [key, val] : mcd_flags)
        if (!val.empty()) mcd_kv[key] = val;
      unsigned threads = mcd_kv["threads"].empty()
                             ? default_threads()
                             : static_cast<unsigned>(std::stoul(mcd_kv["threads"]));
      auto res = jacobi::run_duality_experiment(
          std::stod(mcd_kv["nu"]), parse_list(mcd_kv["x"]),
          parse_list(mcd_kv["u"]),
          static_cast<unsigned>(std::stoul(mcd_kv["n-paths"])),
          std::stod(mcd_kv["dt"]), std::stoull(mcd_kv["seed"]), threads);
      write_mc_outputs(res, mcd_out);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}};
    std::cerr << err.dump() << '\n';
    return 3;
  }
  return 2;
}
