#include "bacterial/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bacterial/operators.hpp"
#include "bacterial/solvers.hpp"

namespace bacterial {

namespace {
constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

ProblemInstance equilibrium_problem(ModelParams params, double amplitude) {
  ProblemInstance inst;
  inst.params = params;
  const InfectionKind kind = params.g_kind;
  inst.initial_u = [amplitude](double x, double y) {
    return amplitude * std::sin(kPi * x) * std::sin(kPi * y) + noise(x, y);
  };
  inst.initial_v = [inst_u = inst.initial_u, kind](double x, double y) {
    return infection(kind, inst_u(x, y));
  };
  return inst;
}

ModelParams equilibrium_params() {
  ModelParams p;
  p.d1 = 0.001;
  p.d2 = 0.0001;
  p.a11 = 1.0;
  p.a12 = 2.5;
  p.a22 = 1.0;
  p.g_kind = InfectionKind::RationalQuadratic;
  return p;
}
}  // namespace

double infection(InfectionKind kind, double u) {
  switch (kind) {
    case InfectionKind::RationalQuadratic:
      return u * u / (1.0 + u * u);
    case InfectionKind::RationalLinear:
      if (u == -1.0) throw std::domain_error("infection: pole at u = -1");
      return u / (1.0 + u);
  }
  throw std::invalid_argument("infection: unknown kind");
}

double noise(double x, double y) {
  return 0.25 * sq(std::sin(5 * kPi * x)) * sq(std::sin(4 * kPi * y)) +
         0.25 * sq(std::sin(3 * kPi * x)) * sq(std::sin(7 * kPi * y)) +
         0.10 * sq(std::sin(9 * kPi * x)) * sq(std::sin(11 * kPi * y));
}

void ModelParams::validate() const {
  if (!(a11 >= 0.0 && a12 >= 0.0 && a22 >= 0.0))
    throw std::invalid_argument("ModelParams: reaction coefficients must be nonnegative");
  if (d1 < 0.0 || d2 < 0.0)
    throw std::invalid_argument("ModelParams: diffusion coefficients must be nonnegative");
}

std::pair<double, double> accuracy_exact(double x, double y, double t) {
  const double s = std::exp(-t) * std::sin(kPi * x) * std::sin(kPi * y);
  return {s, 2.0 * kPi * kPi * s};
}

std::pair<double, double> accuracy_sources(double x, double y, double t) {
  const double s = std::exp(-t) * std::sin(kPi * x) * std::sin(kPi * y);
  const double f2 = 4.0 * std::pow(kPi, 4) * s - infection(InfectionKind::RationalQuadratic, s);
  return {0.0, f2};
}

ProblemInstance accuracy_problem() {
  ProblemInstance inst;
  inst.params = ModelParams{};  // all coefficients 1
  inst.params.sources_enabled = true;
  inst.initial_u = [](double x, double y) { return accuracy_exact(x, y, 0.0).first; };
  inst.initial_v = [](double x, double y) { return accuracy_exact(x, y, 0.0).second; };
  inst.exact_u = [](double x, double y, double t) { return accuracy_exact(x, y, t).first; };
  inst.exact_v = [](double x, double y, double t) { return accuracy_exact(x, y, t).second; };
  inst.f1 = [](double, double, double) { return 0.0; };
  inst.f2 = [](double x, double y, double t) { return accuracy_sources(x, y, t).second; };
  inst.f1_bulk = [](Field& out, double) {
    const Grid2D& g = out.grid();
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 1; j < g.My; ++j) out(i, j) = 0.0;
  };
  inst.f2_bulk = [](Field& out, double t) {
    // the spatial profile is separable, so one sine table per axis suffices
    const Grid2D& g = out.grid();
    std::vector<double> sx(g.Mx + 1), sy(g.My + 1);
    for (int i = 0; i <= g.Mx; ++i) sx[i] = std::sin(kPi * g.x(i));
    for (int j = 0; j <= g.My; ++j) sy[j] = std::sin(kPi * g.y(j));
    const double et = std::exp(-t);
    const double c4 = 4.0 * kPi * kPi * kPi * kPi;
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 1; j < g.My; ++j) {
        const double s = et * sx[i] * sy[j];
        out(i, j) = c4 * s - s * s / (1.0 + s * s);
      }
  };
  return inst;
}

ProblemInstance extinction_problem() { return equilibrium_problem(equilibrium_params(), 0.3); }

ProblemInstance endemic_problem() { return equilibrium_problem(equilibrium_params(), 0.5); }

ProblemInstance paramset_problem(char which, bool high_initial) {
  ModelParams p = equilibrium_params();
  switch (which) {
    case 'a':
      p.g_kind = InfectionKind::RationalLinear;
      break;
    case 'b':
      p.d1 = 0.01;
      break;
    case 'c':
      p.d2 = 0.001;
      break;
    case 'd':
      p.a12 = 1.0;
      break;
    default:
      throw std::invalid_argument("paramset_problem: expected one of a,b,c,d");
  }
  return equilibrium_problem(p, high_initial ? 0.5 : 0.3);
}

std::pair<Field, Field> sample_initial(const ProblemInstance& inst, const Grid2D& grid) {
  Field u0(grid), v0(grid);
  for (int i = 0; i <= grid.Mx; ++i)
    for (int j = 0; j <= grid.My; ++j) {
      u0(i, j) = inst.initial_u(grid.x(i), grid.y(j));
      v0(i, j) = inst.initial_v(grid.x(i), grid.y(j));
    }
  if (!u0.is_boundary_zero(1e-14) || !v0.is_boundary_zero(1e-14))
    throw std::invalid_argument("sample_initial: initial data does not vanish on the boundary");
  u0.zero_boundary();
  v0.zero_boundary();
  return {std::move(u0), std::move(v0)};
}

InitialAux initial_aux(const Field& U0, const Field& V0, const ProblemInstance& inst) {
  require_same_grid(U0, V0);
  const Grid2D& g = U0.grid();
  const ModelParams& p = inst.params;

  const Field lam_u = compact_laplacian(U0);
  const Field h_u = compact_2d(U0);
  const Field lam_v = compact_laplacian(V0);
  const Field h_v = compact_2d(V0);

  Field gU(g);
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j)
      gU(i, j) = infection(p.g_kind, U0(i, j));
  const Field h_gU = compact_2d(gU);

  Field HhP0(g), HhQ0(g);
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) {
      HhP0(i, j) = p.d1 * lam_u(i, j) - p.a11 * h_u(i, j);
      HhQ0(i, j) = p.d2 * lam_v(i, j) - p.a22 * h_v(i, j) + h_gU(i, j);
    }

  if (p.sources_enabled) {
    Field f1s(g), f2s(g);
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 1; j < g.My; ++j) {
        f1s(i, j) = inst.f1(g.x(i), g.y(j), 0.0);
        f2s(i, j) = inst.f2(g.x(i), g.y(j), 0.0);
      }
    const Field hf1 = compact_2d(f1s);
    const Field hf2 = compact_2d(f2s);
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 1; j < g.My; ++j) {
        HhP0(i, j) += hf1(i, j);
        HhQ0(i, j) += hf2(i, j);
      }
  }

  Field P0 = solve_compact_2d(HhP0);
  Field Q0 = solve_compact_2d(HhQ0);
  return {std::move(HhP0), std::move(HhQ0), std::move(P0), std::move(Q0)};
}

}  // namespace bacterial
