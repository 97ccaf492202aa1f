#pragma once

#include "bacterial/cncfd.hpp"
#include "bacterial/model.hpp"
#include "bacterial/operators.hpp"
#include "bacterial/tridiag.hpp"

namespace bacterial {

// One-dimensional factored sweep operator: (1 + a tau/4) * compact
// average - (d tau/2) * second difference along the given axis, applied
// as a stencil (boundary nodes pass through).
Field apply_sweep_operator(const Field& v, Axis axis, double d, double a, double tau);

// Alternating-direction factored variant of the compact Crank-Nicolson
// scheme: each step runs four families of tridiagonal line solves.
class CompactADIScheme {
 public:
  CompactADIScheme(const Grid2D& grid, const ProblemInstance& inst, SchemeOptions opts = {});

  void advance();
  void run_to_final_time();

  int level() const { return level_; }
  double time() const { return grid_->t(level_); }

  const Field& u() const { return u_curr_; }
  const Field& v() const { return v_curr_; }
  const Field& u_previous() const { return u_prev_; }
  const Field& v_previous() const { return v_prev_; }
  const Field& p() const;
  const Field& q() const;

  // Right-hand side of the factored U or V update at the current level;
  // the V side requires the already-advanced U.
  Field assemble_rhs_u(const Field& v_star) const;
  Field assemble_rhs_v(const Field& u_next, const Field& f2_next) const;

  // Nodewise residuals of the perturbed coupled form over the last step.
  std::pair<Field, Field> last_step_residual() const;

 private:
  Field rhs_u_core(const Field& v_star, const Field* f1_next) const;
  Field rhs_v_core(const Field& gu_next, const Field* f2_next) const;
  void sweep_solve(const Field& rhs, double d, double a, Field& out) const;
  Field sample_source(bool second, double t) const;
  Field infection_field(const Field& u) const;

  const Grid2D* grid_;
  const ProblemInstance* inst_;
  SchemeOptions opts_;
  int level_ = 0;

  Field u_curr_, u_prev_;
  Field v_curr_, v_prev_, v_prev2_;
  Field p_curr_, q_curr_;
  Field v_star_last_;

  Field gu_curr_, gu_prev_;
  Field f1_curr_, f2_curr_, f1_prev_, f2_prev_;

  TridiagonalFactorization line_x_u_, line_y_u_, line_x_v_, line_y_v_;
};

}  // namespace bacterial
