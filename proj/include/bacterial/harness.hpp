#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bacterial/adi.hpp"
#include "bacterial/cncfd.hpp"
#include "bacterial/model.hpp"

namespace bacterial {

enum class Scheme { CNCFD, ADI };
enum class ExampleKind { Accuracy, Noise, Endemic, ParamA, ParamB, ParamC, ParamD, Custom };

struct RunConfig {
  Scheme scheme = Scheme::ADI;
  ExampleKind example = ExampleKind::Noise;
  bool high_initial = false;  // amplitude choice for the paramset examples
  int M = 64;
  double tau = 0.1;            // used when tau_h_squared is false
  bool tau_h_squared = false;  // tau = h^2
  double T = 1.0;
  std::vector<double> snapshot_times;
  std::filesystem::path out_dir = ".";
  double solver_tol = 1e-12;
  unsigned long seed = 20240901;

  void validate() const;
};

ProblemInstance make_problem(ExampleKind kind, bool high_initial);

struct TableRow {
  int M = 0;
  double l2_u = 0, order_l2_u = 0;
  double max_u = 0, order_max_u = 0;
  double l2_v = 0, order_l2_v = 0;
  double max_v = 0, order_max_v = 0;
  double cpu_s = 0;
  bool has_order = false;  // first row leaves order cells empty
};

struct ConvergenceTable {
  std::vector<TableRow> rows;
};

// log2 ratio of errors under a refinement ratio of 2 in h.
double estimated_order(double e_coarse, double e_fine);

// Manufactured-solution study: run to T=1 with tau = h^2 and compare
// against the exact solution at the nodes.
ConvergenceTable run_convergence_study(Scheme scheme, const std::vector<int>& Ms,
                                       double solver_tol = 1e-12);

// Sample a fine-grid field at the coincident nodes of a nested coarse grid.
Field restrict_fine_to_coarse(const Field& fine, const Grid2D& coarse);

// Cauchy-error study for the noisy problem: each row compares the ADI
// solution at (tau, h) against the one at (tau/4, h/2).
ConvergenceTable run_cauchy_study(const std::vector<int>& Ms, double solver_tol = 1e-12);

struct Snapshot {
  double time = 0;
  double requested_time = 0;
  Field u;
  Field v;
};

struct SimulationResult {
  std::vector<Snapshot> snapshots;
  std::vector<double> times;
  std::vector<double> max_u;
  std::vector<double> max_v;
};

SimulationResult run_simulation(const RunConfig& config);

// Wall-clock seconds for full Example-1 runs of both schemes at tau = h^2.
std::pair<double, double> run_benchmark(int M, double solver_tol = 1e-12);

void write_table(const ConvergenceTable& table, std::ostream& os);
std::filesystem::path write_table(const ConvergenceTable& table,
                                  const std::filesystem::path& out_dir,
                                  const std::string& name);
std::vector<std::filesystem::path> write_snapshots(const std::vector<Snapshot>& snaps,
                                                   const std::filesystem::path& out_dir);

// Flat key=value config file; returns defaults overridden by file entries.
RunConfig load_config(const std::filesystem::path& file);

}  // namespace bacterial
