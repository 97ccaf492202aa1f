#include "bacterial/solvers.hpp"

#include <cmath>

#include "bacterial/operators.hpp"

namespace bacterial {

Field solve_compact_2d(const Field& rhs) {
  const Grid2D& g = rhs.grid();
  Field v(g);

  const Tridiagonal ax = Tridiagonal::constant(g.Mx - 1, 1.0 / 12.0, 10.0 / 12.0, 1.0 / 12.0);
  const Tridiagonal ay = Tridiagonal::constant(g.My - 1, 1.0 / 12.0, 10.0 / 12.0, 1.0 / 12.0);

  std::vector<double> line(std::max(g.Mx, g.My) - 1);
  std::vector<double> sol(line.size()), scratch(line.size());

  // invert the x-average line by line
  for (int j = 1; j < g.My; ++j) {
    for (int i = 1; i < g.Mx; ++i) line[i - 1] = rhs(i, j);
    thomas_solve_inplace(ax, std::span<const double>(line.data(), g.Mx - 1),
                         std::span<double>(sol.data(), g.Mx - 1),
                         std::span<double>(scratch.data(), g.Mx - 1));
    for (int i = 1; i < g.Mx; ++i) v(i, j) = sol[i - 1];
  }
  // then the y-average
  for (int i = 1; i < g.Mx; ++i) {
    for (int j = 1; j < g.My; ++j) line[j - 1] = v(i, j);
    thomas_solve_inplace(ay, std::span<const double>(line.data(), g.My - 1),
                         std::span<double>(sol.data(), g.My - 1),
                         std::span<double>(scratch.data(), g.My - 1));
    for (int j = 1; j < g.My; ++j) v(i, j) = sol[j - 1];
  }
  return v;
}

std::pair<Field, SolveReport> solve_spd(const ApplyFn& apply, const Field& rhs,
                                        double tol, int max_iter,
                                        const Field* initial_guess) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_spd: tolerance must be positive");
  const Grid2D& g = rhs.grid();
  Field x(g);
  SolveReport rep;

  const double target = tol * std::max(1.0, l2_norm(rhs));

  Field r = rhs;  // r = rhs - A*x0
  if (initial_guess != nullptr) {
    require_same_grid(rhs, *initial_guess);
    x = *initial_guess;
    x.zero_boundary();
    Field ax(g);
    apply(x, ax);
    auto& rd = r.data();
    const auto& ad = ax.data();
    for (size_t k = 0; k < rd.size(); ++k) rd[k] -= ad[k];
    r.zero_boundary();
  }
  double rr = inner_product(r, r);
  rep.residual_norm = std::sqrt(rr);
  if (rep.residual_norm <= target) {
    rep.converged = true;
    return {std::move(x), rep};
  }

  Field p = r;
  Field q(g);
  for (int it = 1; it <= max_iter; ++it) {
    apply(p, q);
    const double pq = inner_product(p, q);
    const double alpha = rr / pq;
    auto& xd = x.data();
    auto& rd = r.data();
    const auto& pd = p.data();
    const auto& qd = q.data();
    for (size_t k = 0; k < xd.size(); ++k) {
      xd[k] += alpha * pd[k];
      rd[k] -= alpha * qd[k];
    }
    const double rr_new = inner_product(r, r);
    rep.iterations = it;
    rep.residual_norm = std::sqrt(rr_new);
    if (rep.residual_norm <= target) {
      rep.converged = true;
      return {std::move(x), rep};
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    auto& pdata = p.data();
    for (size_t k = 0; k < pdata.size(); ++k) pdata[k] = rd[k] + beta * pdata[k];
  }
  throw NonConvergenceError("solve_spd: max iterations exceeded", std::move(x), rep);
}

}  // namespace bacterial
