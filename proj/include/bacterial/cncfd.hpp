#pragma once

#include <optional>

#include "bacterial/model.hpp"
#include "bacterial/solvers.hpp"

namespace bacterial {

struct SchemeOptions {
  double solver_tol = 1e-12;
  int max_iter = 0;  // 0: 10 * Mx * My
  bool recover_aux = true;
};

// Linear extrapolation of the coupling history: the previous value at the
// first step, 3/2 previous - 1/2 the one before afterwards.
Field extrapolate_star(const Field& v_prev, const Field* v_prev2, int target_level);

// Linearized, decoupled Crank-Nicolson compact scheme. Each step solves
// two symmetric positive-definite systems by matrix-free conjugate
// gradients, then optionally recovers the auxiliary variables.
class CompactCNScheme {
 public:
  CompactCNScheme(const Grid2D& grid, const ProblemInstance& inst, SchemeOptions opts = {});

  void advance();  // one time step
  void run_to_final_time();

  int level() const { return level_; }
  double time() const { return grid_->t(level_); }

  const Field& u() const { return u_curr_; }
  const Field& v() const { return v_curr_; }
  const Field& u_previous() const { return u_prev_; }
  const Field& v_previous() const { return v_prev_; }
  const Field& p() const;
  const Field& q() const;
  const InitialAux& initial_values() const { return aux_; }

  const SolveReport& last_report_u() const { return report_u_; }
  const SolveReport& last_report_v() const { return report_v_; }

 private:
  void first_step();
  void general_step();
  Field sample_source(bool second, double t) const;
  Field infection_field(const Field& u) const;
  void recover_aux_fields(const Field& v_star);

  const Grid2D* grid_;
  const ProblemInstance* inst_;
  SchemeOptions opts_;
  int max_iter_;
  int level_ = 0;

  Field u_curr_, u_prev_;
  Field v_curr_, v_prev_, v_prev2_;
  Field p_curr_, q_curr_;
  InitialAux aux_;

  Field gu_curr_;            // g(U) at the current level
  Field f1_curr_, f2_curr_;  // source samples at the current level

  SolveReport report_u_, report_v_;
};

}  // namespace bacterial
