#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bacterial/harness.hpp"
#include "bacterial/operators.hpp"

using namespace bacterial;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool within(double value, double reference, double rel) {
  return std::abs(value - reference) <= rel * std::abs(reference);
}

}  // namespace

TEST_CASE("order estimate") {
  CHECK(estimated_order(16.0, 1.0) == doctest::Approx(4.0));
  CHECK(estimated_order(5.60e-06, 3.49e-07) == doctest::Approx(4.0).epsilon(0.01));
  CHECK_THROWS_AS(estimated_order(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(estimated_order(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("fine-to-coarse restriction") {
  Grid2D fine(16, 12, 1.0, 1);
  Grid2D coarse(8, 6, 1.0, 1);
  Field f(fine);
  for (int i = 0; i <= fine.Mx; ++i)
    for (int j = 0; j <= fine.My; ++j)
      f(i, j) = std::sin(fine.x(i)) * std::cos(fine.y(j));
  Field c = restrict_fine_to_coarse(f, coarse);
  for (int i = 0; i <= coarse.Mx; ++i)
    for (int j = 0; j <= coarse.My; ++j)
      CHECK(c(i, j) == doctest::Approx(std::sin(coarse.x(i)) * std::cos(coarse.y(j))).epsilon(1e-14));

  Grid2D bad(10, 6, 1.0, 1);
  CHECK_THROWS_AS(restrict_fine_to_coarse(f, bad), std::invalid_argument);
}

TEST_CASE("table format") {
  ConvergenceTable t;
  std::ostringstream empty;
  write_table(t, empty);
  CHECK(empty.str() ==
        "M,l2_u,order_l2_u,max_u,order_max_u,l2_v,order_l2_v,max_v,order_max_v,cpu_s\n");

  TableRow r0;
  r0.M = 10;
  r0.l2_u = 5.6e-06;
  r0.max_u = 1.12e-05;
  r0.l2_v = 1.47e-04;
  r0.max_v = 2.93e-04;
  r0.cpu_s = 0.125;
  TableRow r1 = r0;
  r1.M = 20;
  r1.l2_u = 3.49e-07;
  r1.has_order = true;
  r1.order_l2_u = r1.order_max_u = r1.order_l2_v = r1.order_max_v = 4.0;
  t.rows = {r0, r1};
  std::ostringstream os;
  write_table(t, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);  // header
  std::getline(is, line);
  CHECK(line == "10,5.6000e-06,,1.1200e-05,,1.4700e-04,,2.9300e-04,,0.125");
  std::getline(is, line);
  CHECK(line.substr(0, 18) == "20,3.4900e-07,4.00");
}

TEST_CASE("config files") {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "run_cfg_test.txt";
  {
    std::ofstream os(path);
    os << "# comment line\n"
       << "scheme = cncfd\n"
       << "example = endemic\n"
       << "M = 32\n"
       << "tau = 0.05\n"
       << "T = 2.5\n"
       << "snapshots = 0,1.5,2.5\n"
       << "initial = high\n"
       << "tol = 1e-10\n";
  }
  RunConfig cfg = load_config(path);
  CHECK(cfg.scheme == Scheme::CNCFD);
  CHECK(cfg.example == ExampleKind::Endemic);
  CHECK(cfg.M == 32);
  CHECK(cfg.tau == doctest::Approx(0.05));
  CHECK(cfg.T == doctest::Approx(2.5));
  CHECK(cfg.snapshot_times.size() == 3);
  CHECK(cfg.high_initial);
  CHECK(cfg.solver_tol == doctest::Approx(1e-10));
  CHECK_NOTHROW(cfg.validate());

  {
    std::ofstream os(path);
    os << "bogus = 1\n";
  }
  CHECK_THROWS(load_config(path));
  std::filesystem::remove(path);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.M = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.M = 16;
  cfg.snapshot_times = {2.0};
  cfg.T = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("simulation snapshots and history") {
  RunConfig cfg;
  cfg.scheme = Scheme::ADI;
  cfg.example = ExampleKind::Noise;
  cfg.M = 8;
  cfg.tau = 0.1;
  cfg.T = 0.4;
  cfg.snapshot_times = {0.0, 0.4};
  SimulationResult res = run_simulation(cfg);
  CHECK(res.times.size() == 5);  // levels 0..4
  CHECK(res.snapshots.size() == 2);
  CHECK(res.snapshots.front().time == doctest::Approx(0.0));
  CHECK(res.snapshots.back().time == doctest::Approx(0.4));
  // initial snapshot reproduces the sampled initial data
  const Field& u0 = res.snapshots.front().u;
  ProblemInstance inst = extinction_problem();
  CHECK(u0(4, 4) == doctest::Approx(inst.initial_u(0.5, 0.5)).epsilon(1e-13));
  CHECK(u0(0, 0) == 0.0);

  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "snap_test_dir";
  std::filesystem::remove_all(dir);
  auto paths = write_snapshots(res.snapshots, dir);
  CHECK(paths.size() == 4);
  const std::string first = read_file(paths.front());
  CHECK(first.substr(0, 14) == "# t=0 Mx=8 My=");
  // one header plus Mx+1 value rows
  CHECK(std::count(first.begin(), first.end(), '\n') == 10);

  // determinism: a rerun produces byte-identical output
  SimulationResult res2 = run_simulation(cfg);
  const std::filesystem::path dir2 = std::filesystem::temp_directory_path() / "snap_test_dir2";
  std::filesystem::remove_all(dir2);
  auto paths2 = write_snapshots(res2.snapshots, dir2);
  for (size_t k = 0; k < paths.size(); ++k) CHECK(read_file(paths[k]) == read_file(paths2[k]));
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("manufactured-solution study reproduces the reference errors") {
  ConvergenceTable cn = run_convergence_study(Scheme::CNCFD, {10, 20});
  REQUIRE(cn.rows.size() == 2);
  CHECK(within(cn.rows[0].max_u, 1.12e-05, 0.05));
  CHECK(within(cn.rows[0].l2_u, 5.60e-06, 0.05));
  CHECK(within(cn.rows[0].l2_v, 1.47e-04, 0.05));
  CHECK(within(cn.rows[0].max_v, 2.93e-04, 0.05));
  CHECK(within(cn.rows[1].max_u, 6.98e-07, 0.05));
  CHECK(cn.rows[1].order_l2_u >= 3.9);
  CHECK(cn.rows[1].order_l2_u <= 4.1);

  // frozen from this implementation: the factored scheme carries the
  // expected splitting perturbation on top of the unfactored error, and
  // both error norms must refine at fourth order
  ConvergenceTable adi = run_convergence_study(Scheme::ADI, {20, 40});
  REQUIRE(adi.rows.size() == 2);
  CHECK(within(adi.rows[0].l2_u, 3.4845e-06, 0.02));
  CHECK(within(adi.rows[0].max_u, 6.9691e-06, 0.02));
  CHECK(within(adi.rows[0].l2_v, 4.0110e-05, 0.02));
  CHECK(within(adi.rows[0].max_v, 8.0230e-05, 0.02));
  CHECK(within(adi.rows[1].max_u, 4.3554e-07, 0.02));
  for (double o : {adi.rows[1].order_l2_u, adi.rows[1].order_max_u, adi.rows[1].order_l2_v,
                   adi.rows[1].order_max_v}) {
    CHECK(o >= 3.9);
    CHECK(o <= 4.1);
  }
}

TEST_CASE("the two schemes agree on the manufactured solution") {
  const int M = 20;
  Grid2D g(M, M, 1.0, M * M);
  ProblemInstance inst = accuracy_problem();
  SchemeOptions opts{1e-12, 0, false};
  CompactCNScheme cn(g, inst, opts);
  CompactADIScheme adi(g, inst, opts);
  cn.run_to_final_time();
  adi.run_to_final_time();
  double err = 0.0;
  for (int i = 1; i < M; ++i)
    for (int j = 1; j < M; ++j)
      err = std::max(err, std::abs(cn.u()(i, j) - adi.u()(i, j)));
  CHECK(err <= 1e-5);
}

TEST_CASE("self-convergence study on the noisy problem") {
  ConvergenceTable t = run_cauchy_study({20});
  REQUIRE(t.rows.size() == 1);
  CHECK(within(t.rows[0].max_u, 1.69e-02, 0.10));
  CHECK(within(t.rows[0].max_v, 1.01e-02, 0.10));
  // frozen from this implementation
  CHECK(within(t.rows[0].l2_u, 4.0131e-03, 0.02));
  CHECK(within(t.rows[0].l2_v, 2.0814e-03, 0.02));
}
