#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "bacterial/checks.hpp"
#include "bacterial/harness.hpp"
#include "bacterial/solvers.hpp"

namespace {

using namespace bacterial;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "cncfd") return Scheme::CNCFD;
  if (s == "adi") return Scheme::ADI;
  throw CLI::ValidationError("--scheme", "expected cncfd or adi");
}

ExampleKind parse_example(const std::string& s) {
  if (s == "accuracy") return ExampleKind::Accuracy;
  if (s == "noise") return ExampleKind::Noise;
  if (s == "endemic") return ExampleKind::Endemic;
  if (s == "paramset_a") return ExampleKind::ParamA;
  if (s == "paramset_b") return ExampleKind::ParamB;
  if (s == "paramset_c") return ExampleKind::ParamC;
  if (s == "paramset_d") return ExampleKind::ParamD;
  throw CLI::ValidationError("--example", "unknown example '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourth-order compact solvers for the coupled bacterial reaction-diffusion system"};
  app.require_subcommand(1);

  std::string scheme_str = "adi";
  std::string example_str;
  std::string initial_str = "low";
  std::string m_list_str;
  std::string snapshots_str;
  std::string config_file;
  int M = 0;
  double tau = 0.0;
  std::string tau_rule;
  double T = 0.0;
  std::string out_dir;
  double tol = 0.0;
  unsigned long seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scheme", scheme_str, "cncfd or adi");
    cmd->add_option("--example", example_str, "accuracy, noise, endemic, paramset_a..d");
    cmd->add_option("--initial", initial_str, "low or high amplitude for paramset examples");
    cmd->add_option("--M", M, "nodes per direction");
    cmd->add_option("--M-list", m_list_str, "comma-separated list of M values");
    cmd->add_option("--tau", tau, "fixed time step");
    cmd->add_option("--tau-rule", tau_rule, "h2: couple tau = h^2");
    cmd->add_option("--T", T, "final time");
    cmd->add_option("--snapshots", snapshots_str, "comma-separated snapshot times");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--tol", tol, "iterative solver tolerance");
    cmd->add_option("--seed", seed, "seed for randomized property suites");
    cmd->add_option("--config", config_file, "key=value config file (flags override)");
  };

  CLI::App* conv = app.add_subcommand("convergence", "manufactured-solution error table");
  CLI::App* cauchy = app.add_subcommand("cauchy", "nested-grid Cauchy error table");
  CLI::App* simulate = app.add_subcommand("simulate", "long-time run with field snapshots");
  CLI::App* bench = app.add_subcommand("bench", "wall-clock comparison of the two schemes");
  CLI::App* check = app.add_subcommand("check", "randomized operator/solver property suites");
  for (auto* cmd : {conv, cauchy, simulate, bench, check}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_file.empty()) cfg = load_config(config_file);
    if (app.count_all() > 0) {
      // flag overrides
      if (!scheme_str.empty()) cfg.scheme = parse_scheme(scheme_str);
      if (!example_str.empty()) cfg.example = parse_example(example_str);
      cfg.high_initial = initial_str == "high";
      if (M > 0) cfg.M = M;
      if (tau > 0.0) {
        cfg.tau = tau;
        cfg.tau_h_squared = false;
      }
      if (tau_rule == "h2") cfg.tau_h_squared = true;
      if (T > 0.0) cfg.T = T;
      if (!snapshots_str.empty()) {
        cfg.snapshot_times.clear();
        std::stringstream ss(snapshots_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.snapshot_times.push_back(std::stod(tok));
      }
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (tol > 0.0) cfg.solver_tol = tol;
      if (seed != 0) cfg.seed = seed;
    }

    if (conv->parsed()) {
      std::vector<int> Ms = m_list_str.empty() ? std::vector<int>{cfg.M} : parse_int_list(m_list_str);
      const ConvergenceTable table = run_convergence_study(cfg.scheme, Ms, cfg.solver_tol);
      write_table(table, std::cout);
      if (!out_dir.empty())
        write_table(table, cfg.out_dir,
                    cfg.scheme == Scheme::CNCFD ? "convergence_cncfd.csv" : "convergence_adi.csv");
      return 0;
    }
    if (cauchy->parsed()) {
      std::vector<int> Ms = m_list_str.empty() ? std::vector<int>{cfg.M} : parse_int_list(m_list_str);
      const ConvergenceTable table = run_cauchy_study(Ms, cfg.solver_tol);
      write_table(table, std::cout);
      if (!out_dir.empty()) write_table(table, cfg.out_dir, "cauchy_adi.csv");
      return 0;
    }
    if (simulate->parsed()) {
      if (example_str.empty() && config_file.empty()) cfg.example = ExampleKind::Noise;
      const SimulationResult result = run_simulation(cfg);
      const auto paths = write_snapshots(result.snapshots, cfg.out_dir);
      for (const auto& p : paths) std::cout << p.string() << '\n';
      std::cout << "final max|u| = " << result.max_u.back()
                << ", max|v| = " << result.max_v.back() << '\n';
      return 0;
    }
    if (bench->parsed()) {
      const int m = cfg.M > 0 ? cfg.M : 80;
      const auto [cn_s, adi_s] = run_benchmark(m, cfg.solver_tol);
      std::cout << "M=" << m << " cncfd_seconds=" << cn_s << " adi_seconds=" << adi_s
                << " speedup=" << cn_s / adi_s << '\n';
      return 0;
    }
    if (check->parsed()) {
      bool all_pass = true;
      for (const CheckResult& r : run_all_checks(cfg.seed)) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
        std::cout << '\n';
        all_pass = all_pass && r.pass;
      }
      return all_pass ? 0 : 3;
    }
  } catch (const NonConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const SingularSystemError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
