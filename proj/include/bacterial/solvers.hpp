#pragma once

#include <functional>
#include <utility>

#include "bacterial/grid.hpp"
#include "bacterial/tridiag.hpp"

namespace bacterial {

struct SolveReport {
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

struct NonConvergenceError : std::runtime_error {
  NonConvergenceError(std::string msg, Field best, SolveReport rep)
      : std::runtime_error(std::move(msg)), best_iterate(std::move(best)), report(rep) {}
  Field best_iterate;
  SolveReport report;
};

// Inverts the 2D compact operator by a family of x-line tridiagonal
// solves followed by y-line solves. Input and output are zero on the
// boundary.
Field solve_compact_2d(const Field& rhs);

using ApplyFn = std::function<void(const Field& in, Field& out)>;

// Matrix-free conjugate gradients for a symmetric positive-definite
// operator on the zero-boundary space. Converged when the residual
// drops below tol * max(1, ||rhs||).
std::pair<Field, SolveReport> solve_spd(const ApplyFn& apply, const Field& rhs,
                                        double tol, int max_iter,
                                        const Field* initial_guess = nullptr);

}  // namespace bacterial
