#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bacterial/grid.hpp"

namespace bacterial {

enum class InfectionKind { RationalQuadratic, RationalLinear };

// Infection rate g(u); both variants satisfy g(0) = 0 and are Lipschitz
// with constant <= 1 on u >= 0.
double infection(InfectionKind kind, double u);

// Oscillatory nonnegative perturbation used by the extinction/endemic
// initial data; vanishes on the boundary of the unit square.
double noise(double x, double y);

struct ModelParams {
  double d1 = 1.0;
  double d2 = 1.0;
  double a11 = 1.0;
  double a12 = 1.0;
  double a22 = 1.0;
  InfectionKind g_kind = InfectionKind::RationalQuadratic;
  bool sources_enabled = false;

  void validate() const;
};

using SpaceFn = std::function<double(double, double)>;
using SpaceTimeFn = std::function<double(double, double, double)>;
// fills the interior of a field with source samples at one time level
using BulkSampler = std::function<void(Field&, double)>;

struct ProblemInstance {
  ModelParams params;
  SpaceFn initial_u;
  SpaceFn initial_v;
  SpaceTimeFn exact_u;  // optional, paired with sources
  SpaceTimeFn exact_v;
  SpaceTimeFn f1;
  SpaceTimeFn f2;
  BulkSampler f1_bulk;  // optional fast path equivalent to sampling f1/f2
  BulkSampler f2_bulk;

  bool has_exact() const { return static_cast<bool>(exact_u); }
};

// Manufactured-solution accuracy problem: u = e^{-t} sin(pi x) sin(pi y),
// v = 2 pi^2 u, with f1 = 0 and f2 chosen so the pair solves the system.
ProblemInstance accuracy_problem();
std::pair<double, double> accuracy_exact(double x, double y, double t);
std::pair<double, double> accuracy_sources(double x, double y, double t);

// Small-amplitude noisy initial data that decays to extinction.
ProblemInstance extinction_problem();
// Larger-amplitude variant that settles into an endemic steady state.
ProblemInstance endemic_problem();
// Parameter variants (a)-(d); high_initial selects the larger amplitude.
ProblemInstance paramset_problem(char which, bool high_initial);

// Node-samples the initial data; boundary samples must vanish.
std::pair<Field, Field> sample_initial(const ProblemInstance& inst, const Grid2D& grid);

struct InitialAux {
  Field HhP0;
  Field HhQ0;
  Field P0;
  Field Q0;
};

// Fourth-order consistent initial values of the auxiliary variables,
// built from the compact operators and recovered by compact inversion.
InitialAux initial_aux(const Field& U0, const Field& V0, const ProblemInstance& inst);

}  // namespace bacterial
