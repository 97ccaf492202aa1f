#include "bacterial/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bacterial/operators.hpp"

namespace bacterial {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct ErrorPair {
  double l2 = 0;
  double max = 0;
};

ErrorPair error_against_exact(const Field& num, const SpaceTimeFn& exact, double t) {
  const Grid2D& g = num.grid();
  Field diff(g);
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j)
      diff(i, j) = num(i, j) - exact(g.x(i), g.y(j), t);
  return {l2_norm(diff), max_norm(diff)};
}

ErrorPair error_between(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field diff = a;
  auto& d = diff.data();
  const auto& bd = b.data();
  for (size_t k = 0; k < d.size(); ++k) d[k] -= bd[k];
  return {l2_norm(diff), max_norm(diff)};
}

void fill_orders(ConvergenceTable& table) {
  for (size_t r = 1; r < table.rows.size(); ++r) {
    TableRow& row = table.rows[r];
    const TableRow& prev = table.rows[r - 1];
    row.order_l2_u = estimated_order(prev.l2_u, row.l2_u);
    row.order_max_u = estimated_order(prev.max_u, row.max_u);
    row.order_l2_v = estimated_order(prev.l2_v, row.l2_v);
    row.order_max_v = estimated_order(prev.max_v, row.max_v);
    row.has_order = true;
  }
}

std::string format_time_tag(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

}  // namespace

void RunConfig::validate() const {
  if (M < 2) throw std::invalid_argument("config: M must be >= 2");
  if (!(T > 0.0)) throw std::invalid_argument("config: T must be positive");
  if (!tau_h_squared && !(tau > 0.0)) throw std::invalid_argument("config: tau must be positive");
  if (!(solver_tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  for (double t : snapshot_times)
    if (t < 0.0 || t > T) throw std::invalid_argument("config: snapshot times must lie in [0, T]");
}

ProblemInstance make_problem(ExampleKind kind, bool high_initial) {
  switch (kind) {
    case ExampleKind::Accuracy: return accuracy_problem();
    case ExampleKind::Noise: return extinction_problem();
    case ExampleKind::Endemic: return endemic_problem();
    case ExampleKind::ParamA: return paramset_problem('a', high_initial);
    case ExampleKind::ParamB: return paramset_problem('b', high_initial);
    case ExampleKind::ParamC: return paramset_problem('c', high_initial);
    case ExampleKind::ParamD: return paramset_problem('d', high_initial);
    case ExampleKind::Custom: break;
  }
  throw std::invalid_argument("make_problem: custom problems must be built directly");
}

double estimated_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::invalid_argument("estimated_order: errors must be positive");
  return std::log2(e_coarse / e_fine);
}

ConvergenceTable run_convergence_study(Scheme scheme, const std::vector<int>& Ms, double solver_tol) {
  const ProblemInstance inst = accuracy_problem();
  ConvergenceTable table;
  for (int M : Ms) {
    const Grid2D grid(M, M, 1.0, M * M);  // tau = h^2
    SchemeOptions opts;
    opts.solver_tol = solver_tol;
    opts.recover_aux = false;

    TableRow row;
    row.M = M;
    try {
      const double t0 = now_seconds();
      ErrorPair eu, ev;
      if (scheme == Scheme::CNCFD) {
        CompactCNScheme solver(grid, inst, opts);
        solver.run_to_final_time();
        row.cpu_s = now_seconds() - t0;
        eu = error_against_exact(solver.u(), inst.exact_u, grid.T);
        ev = error_against_exact(solver.v(), inst.exact_v, grid.T);
      } else {
        CompactADIScheme solver(grid, inst, opts);
        solver.run_to_final_time();
        row.cpu_s = now_seconds() - t0;
        eu = error_against_exact(solver.u(), inst.exact_u, grid.T);
        ev = error_against_exact(solver.v(), inst.exact_v, grid.T);
      }
      row.l2_u = eu.l2;
      row.max_u = eu.max;
      row.l2_v = ev.l2;
      row.max_v = ev.max;
    } catch (const std::exception&) {
      break;  // return the partial table accumulated so far
    }
    table.rows.push_back(row);
  }
  fill_orders(table);
  return table;
}

Field restrict_fine_to_coarse(const Field& fine, const Grid2D& coarse) {
  const Grid2D& fg = fine.grid();
  if (fg.Mx != 2 * coarse.Mx || fg.My != 2 * coarse.My)
    throw std::invalid_argument("restrict_fine_to_coarse: grids are not nested 2:1");
  Field out(coarse);
  for (int i = 0; i <= coarse.Mx; ++i)
    for (int j = 0; j <= coarse.My; ++j)
      out(i, j) = fine(2 * i, 2 * j);
  return out;
}

ConvergenceTable run_cauchy_study(const std::vector<int>& Ms, double solver_tol) {
  const ProblemInstance inst = extinction_problem();
  ConvergenceTable table;
  for (int M : Ms) {
    const Grid2D coarse(M, M, 1.0, M * M);
    const Grid2D fine(2 * M, 2 * M, 1.0, 4 * M * M);
    SchemeOptions opts;
    opts.solver_tol = solver_tol;
    opts.recover_aux = false;

    TableRow row;
    row.M = M;
    try {
      const double t0 = now_seconds();
      CompactADIScheme coarse_run(coarse, inst, opts);
      coarse_run.run_to_final_time();
      CompactADIScheme fine_run(fine, inst, opts);
      fine_run.run_to_final_time();
      row.cpu_s = now_seconds() - t0;

      const ErrorPair eu = error_between(coarse_run.u(), restrict_fine_to_coarse(fine_run.u(), coarse));
      const ErrorPair ev = error_between(coarse_run.v(), restrict_fine_to_coarse(fine_run.v(), coarse));
      row.l2_u = eu.l2;
      row.max_u = eu.max;
      row.l2_v = ev.l2;
      row.max_v = ev.max;
    } catch (const std::exception&) {
      break;
    }
    table.rows.push_back(row);
  }
  fill_orders(table);
  return table;
}

SimulationResult run_simulation(const RunConfig& config) {
  config.validate();
  const ProblemInstance inst = make_problem(config.example, config.high_initial);

  const double tau = config.tau_h_squared ? 1.0 / (static_cast<double>(config.M) * config.M)
                                          : config.tau;
  const int N = std::max(1, static_cast<int>(std::llround(config.T / tau)));
  const Grid2D grid(config.M, config.M, config.T, N);

  SchemeOptions opts;
  opts.solver_tol = config.solver_tol;
  opts.recover_aux = false;

  // map requested snapshot times to the nearest step index
  std::vector<std::pair<int, double>> snap_levels;
  for (double t : config.snapshot_times) {
    int n = static_cast<int>(std::llround(t / grid.tau));
    n = std::clamp(n, 0, grid.N);
    snap_levels.emplace_back(n, t);
  }

  SimulationResult result;
  auto record = [&](int level, const Field& u, const Field& v) {
    result.times.push_back(grid.t(level));
    result.max_u.push_back(max_norm(u));
    result.max_v.push_back(max_norm(v));
    for (auto [n, requested] : snap_levels)
      if (n == level)
        result.snapshots.push_back({grid.t(level), requested, u, v});
  };

  if (config.scheme == Scheme::CNCFD) {
    CompactCNScheme solver(grid, inst, opts);
    record(0, solver.u(), solver.v());
    while (solver.level() < grid.N) {
      solver.advance();
      record(solver.level(), solver.u(), solver.v());
    }
  } else {
    CompactADIScheme solver(grid, inst, opts);
    record(0, solver.u(), solver.v());
    while (solver.level() < grid.N) {
      solver.advance();
      record(solver.level(), solver.u(), solver.v());
    }
  }
  return result;
}

std::pair<double, double> run_benchmark(int M, double solver_tol) {
  const ProblemInstance inst = accuracy_problem();
  const Grid2D grid(M, M, 1.0, M * M);
  SchemeOptions opts;
  opts.solver_tol = solver_tol;
  opts.recover_aux = false;

  const double t0 = now_seconds();
  {
    CompactCNScheme solver(grid, inst, opts);
    solver.run_to_final_time();
  }
  const double cn_seconds = now_seconds() - t0;

  const double t1 = now_seconds();
  {
    CompactADIScheme solver(grid, inst, opts);
    solver.run_to_final_time();
  }
  const double adi_seconds = now_seconds() - t1;
  return {cn_seconds, adi_seconds};
}

void write_table(const ConvergenceTable& table, std::ostream& os) {
  os << "M,l2_u,order_l2_u,max_u,order_max_u,l2_v,order_l2_v,max_v,order_max_v,cpu_s\n";
  for (const TableRow& r : table.rows) {
    os << r.M << ',' << std::scientific << std::setprecision(4) << r.l2_u << ',';
    if (r.has_order) os << std::fixed << std::setprecision(2) << r.order_l2_u;
    os << ',' << std::scientific << std::setprecision(4) << r.max_u << ',';
    if (r.has_order) os << std::fixed << std::setprecision(2) << r.order_max_u;
    os << ',' << std::scientific << std::setprecision(4) << r.l2_v << ',';
    if (r.has_order) os << std::fixed << std::setprecision(2) << r.order_l2_v;
    os << ',' << std::scientific << std::setprecision(4) << r.max_v << ',';
    if (r.has_order) os << std::fixed << std::setprecision(2) << r.order_max_v;
    os << ',' << std::fixed << std::setprecision(3) << r.cpu_s << '\n';
  }
}

std::filesystem::path write_table(const ConvergenceTable& table,
                                  const std::filesystem::path& out_dir,
                                  const std::string& name) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path = out_dir / name;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  write_table(table, os);
  return path;
}

std::vector<std::filesystem::path> write_snapshots(const std::vector<Snapshot>& snaps,
                                                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> paths;
  for (const Snapshot& s : snaps) {
    const Grid2D& g = s.u.grid();
    const std::string tag = format_time_tag(s.requested_time);
    for (const auto& [prefix, field] : {std::pair<const char*, const Field*>{"u", &s.u},
                                        std::pair<const char*, const Field*>{"v", &s.v}}) {
      const std::filesystem::path path = out_dir / (std::string(prefix) + "_t" + tag + ".csv");
      std::ofstream os(path);
      if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
      os << "# t=" << s.time << " Mx=" << g.Mx << " My=" << g.My << '\n';
      os << std::scientific << std::setprecision(10);
      for (int i = 0; i <= g.Mx; ++i) {
        for (int j = 0; j <= g.My; ++j) {
          if (j) os << ',';
          os << (*field)(i, j);
        }
        os << '\n';
      }
      paths.push_back(path);
    }
  }
  return paths;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("cannot open config file: " + file.string());
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "scheme") {
      if (value == "cncfd") cfg.scheme = Scheme::CNCFD;
      else if (value == "adi") cfg.scheme = Scheme::ADI;
      else throw std::runtime_error("config: unknown scheme '" + value + "'");
    } else if (key == "example") {
      if (value == "accuracy") cfg.example = ExampleKind::Accuracy;
      else if (value == "noise") cfg.example = ExampleKind::Noise;
      else if (value == "endemic") cfg.example = ExampleKind::Endemic;
      else if (value == "paramset_a") cfg.example = ExampleKind::ParamA;
      else if (value == "paramset_b") cfg.example = ExampleKind::ParamB;
      else if (value == "paramset_c") cfg.example = ExampleKind::ParamC;
      else if (value == "paramset_d") cfg.example = ExampleKind::ParamD;
      else throw std::runtime_error("config: unknown example '" + value + "'");
    } else if (key == "M") {
      cfg.M = std::stoi(value);
    } else if (key == "tau") {
      cfg.tau = std::stod(value);
      cfg.tau_h_squared = false;
    } else if (key == "tau_rule") {
      if (value == "h2") cfg.tau_h_squared = true;
      else throw std::runtime_error("config: unknown tau_rule '" + value + "'");
    } else if (key == "T") {
      cfg.T = std::stod(value);
    } else if (key == "snapshots") {
      cfg.snapshot_times.clear();
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) cfg.snapshot_times.push_back(std::stod(tok));
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "tol") {
      cfg.solver_tol = std::stod(value);
    } else if (key == "seed") {
      cfg.seed = std::stoul(value);
    } else if (key == "initial") {
      if (value == "high") cfg.high_initial = true;
      else if (value == "low") cfg.high_initial = false;
      else throw std::runtime_error("config: unknown initial '" + value + "'");
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace bacterial
