#include "bacterial/adi.hpp"

#include <stdexcept>

#include "bacterial/operators.hpp"
#include "bacterial/solvers.hpp"
#include "stencil.hpp"

namespace bacterial {

using detail::Stencil3x3;

Field apply_sweep_operator(const Field& v, Axis axis, double d, double a, double tau) {
  const Grid2D& g = v.grid();
  Field out(g);
  const double c = 1.0 + 0.25 * a * tau;
  if (axis == Axis::X) {
    const double s = 0.5 * d * tau / (g.hx * g.hx);
    for (int j = 0; j <= g.My; ++j) {
      out(0, j) = v(0, j);
      out(g.Mx, j) = v(g.Mx, j);
    }
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 0; j <= g.My; ++j)
        out(i, j) = c * (v(i - 1, j) + 10.0 * v(i, j) + v(i + 1, j)) / 12.0 -
                    s * (v(i - 1, j) - 2.0 * v(i, j) + v(i + 1, j));
  } else {
    const double s = 0.5 * d * tau / (g.hy * g.hy);
    for (int i = 0; i <= g.Mx; ++i) {
      out(i, 0) = v(i, 0);
      out(i, g.My) = v(i, g.My);
    }
    for (int i = 0; i <= g.Mx; ++i)
      for (int j = 1; j < g.My; ++j)
        out(i, j) = c * (v(i, j - 1) + 10.0 * v(i, j) + v(i, j + 1)) / 12.0 -
                    s * (v(i, j - 1) - 2.0 * v(i, j) + v(i, j + 1));
  }
  return out;
}

namespace {

Tridiagonal sweep_matrix(int n, double h, double d, double a, double tau) {
  const double c = 1.0 + 0.25 * a * tau;
  const double s = 0.5 * d * tau / (h * h);
  return Tridiagonal::constant(n, c / 12.0 - s, c * 10.0 / 12.0 + 2.0 * s, c / 12.0 - s);
}

// Factored operator expanded on interior nodes plus the explicit terms of
// the update, collapsed into one 3x3 stencil.
Stencil3x3 rhs_stencil(const Grid2D& g, double d, double a) {
  const double tau = g.tau;
  const double c = 1.0 + 0.25 * a * tau;
  Stencil3x3 out;
  out.axpy(c * c - a * tau, detail::compact_2d_stencil(g));
  out.axpy(0.5 * d * tau * (1.0 - 0.25 * a * tau), detail::compact_laplacian_stencil(g));
  out.axpy(0.25 * d * d * tau * tau, detail::mixed_fourth_stencil(g));
  return out;
}

void average_into(Field& acc, const Field& other) {
  auto& a = acc.data();
  const auto& b = other.data();
  for (size_t k = 0; k < a.size(); ++k) a[k] = 0.5 * (a[k] + b[k]);
}

}  // namespace

CompactADIScheme::CompactADIScheme(const Grid2D& grid, const ProblemInstance& inst, SchemeOptions opts)
    : grid_(&grid),
      inst_(&inst),
      opts_(opts),
      u_curr_(grid),
      u_prev_(grid),
      v_curr_(grid),
      v_prev_(grid),
      v_prev2_(grid),
      p_curr_(grid),
      q_curr_(grid),
      v_star_last_(grid),
      gu_curr_(grid),
      gu_prev_(grid),
      f1_curr_(grid),
      f2_curr_(grid),
      f1_prev_(grid),
      f2_prev_(grid) {
  inst.params.validate();
  const ModelParams& p = inst.params;
  line_x_u_ = TridiagonalFactorization(sweep_matrix(grid.Mx - 1, grid.hx, p.d1, p.a11, grid.tau));
  line_y_u_ = TridiagonalFactorization(sweep_matrix(grid.My - 1, grid.hy, p.d1, p.a11, grid.tau));
  line_x_v_ = TridiagonalFactorization(sweep_matrix(grid.Mx - 1, grid.hx, p.d2, p.a22, grid.tau));
  line_y_v_ = TridiagonalFactorization(sweep_matrix(grid.My - 1, grid.hy, p.d2, p.a22, grid.tau));

  auto [u0, v0] = sample_initial(inst, grid);
  u_curr_ = std::move(u0);
  v_curr_ = std::move(v0);
  const InitialAux aux = initial_aux(u_curr_, v_curr_, inst);
  p_curr_ = aux.P0;
  q_curr_ = aux.Q0;
  gu_curr_ = infection_field(u_curr_);
  if (p.sources_enabled) {
    f1_curr_ = sample_source(false, 0.0);
    f2_curr_ = sample_source(true, 0.0);
  }
}

const Field& CompactADIScheme::p() const {
  if (!opts_.recover_aux && level_ > 0)
    throw std::logic_error("auxiliary recovery disabled for this run");
  return p_curr_;
}

const Field& CompactADIScheme::q() const {
  if (!opts_.recover_aux && level_ > 0)
    throw std::logic_error("auxiliary recovery disabled for this run");
  return q_curr_;
}

Field CompactADIScheme::sample_source(bool second, double t) const {
  Field out(*grid_);
  const BulkSampler& bulk = second ? inst_->f2_bulk : inst_->f1_bulk;
  if (bulk) {
    bulk(out, t);
    return out;
  }
  const SpaceTimeFn& f = second ? inst_->f2 : inst_->f1;
  for (int i = 1; i < grid_->Mx; ++i)
    for (int j = 1; j < grid_->My; ++j)
      out(i, j) = f(grid_->x(i), grid_->y(j), t);
  return out;
}

Field CompactADIScheme::infection_field(const Field& u) const {
  Field out(*grid_);
  for (int i = 1; i < grid_->Mx; ++i)
    for (int j = 1; j < grid_->My; ++j)
      out(i, j) = infection(inst_->params.g_kind, u(i, j));
  return out;
}

Field CompactADIScheme::rhs_u_core(const Field& v_star, const Field* f1_next) const {
  const Grid2D& g = *grid_;
  const ModelParams& p = inst_->params;
  const Stencil3x3 hh = detail::compact_2d_stencil(g);
  Field rhs(g);
  detail::apply_stencil(rhs_stencil(g, p.d1, p.a11), u_curr_, rhs);
  detail::accumulate_stencil(hh, v_star, g.tau * p.a12, rhs);
  if (p.sources_enabled) {
    Field favg = *f1_next;
    average_into(favg, f1_curr_);
    detail::accumulate_stencil(hh, favg, g.tau, rhs);
  }
  rhs.zero_boundary();
  return rhs;
}

Field CompactADIScheme::assemble_rhs_u(const Field& v_star) const {
  if (!inst_->params.sources_enabled) return rhs_u_core(v_star, nullptr);
  const Field f1_next = sample_source(false, grid_->t(level_ + 1));
  return rhs_u_core(v_star, &f1_next);
}

Field CompactADIScheme::rhs_v_core(const Field& gu_next, const Field* f2_next) const {
  const Grid2D& g = *grid_;
  const ModelParams& p = inst_->params;
  const Stencil3x3 hh = detail::compact_2d_stencil(g);
  Field rhs(g);
  detail::apply_stencil(rhs_stencil(g, p.d2, p.a22), v_curr_, rhs);
  Field gavg = gu_next;
  average_into(gavg, gu_curr_);
  detail::accumulate_stencil(hh, gavg, g.tau, rhs);
  if (p.sources_enabled) {
    Field favg = *f2_next;
    average_into(favg, f2_curr_);
    detail::accumulate_stencil(hh, favg, g.tau, rhs);
  }
  rhs.zero_boundary();
  return rhs;
}

Field CompactADIScheme::assemble_rhs_v(const Field& u_next, const Field& f2_next) const {
  return rhs_v_core(infection_field(u_next), &f2_next);
}

void CompactADIScheme::sweep_solve(const Field& rhs, double d, double a, Field& out) const {
  const Grid2D& g = *grid_;
  const bool first = d == inst_->params.d1 && a == inst_->params.a11;
  const TridiagonalFactorization& lx = first ? line_x_u_ : line_x_v_;
  const TridiagonalFactorization& ly = first ? line_y_u_ : line_y_v_;

  out.fill(0.0);
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) out(i, j) = rhs(i, j);

  const size_t nodes_y = static_cast<size_t>(g.My) + 1;
  double* interior = &out(1, 1);
  // x-direction lines eliminate along i, batched over the j columns;
  // intermediate boundary values are zero.
  lx.solve_strided_batch(interior, nodes_y, static_cast<size_t>(g.My) - 1, 1);
  // y-direction lines eliminate along j, batched over the i rows.
  ly.solve_strided_batch(interior, 1, static_cast<size_t>(g.Mx) - 1, nodes_y);
}

void CompactADIScheme::advance() {
  const Grid2D& g = *grid_;
  const ModelParams& p = inst_->params;
  const int next = level_ + 1;

  Field v_star = extrapolate_star(v_curr_, next >= 2 ? &v_prev_ : nullptr, next);

  Field f1_next(g), f2_next(g);
  if (p.sources_enabled) {
    f1_next = sample_source(false, g.t(next));
    f2_next = sample_source(true, g.t(next));
  }

  const Field rhs_u = rhs_u_core(v_star, &f1_next);
  Field u_next(g);
  sweep_solve(rhs_u, p.d1, p.a11, u_next);

  Field gu_next = infection_field(u_next);
  const Field rhs_v = rhs_v_core(gu_next, &f2_next);
  Field v_next(g);
  sweep_solve(rhs_v, p.d2, p.a22, v_next);

  u_prev_ = std::move(u_curr_);
  v_prev2_ = std::move(v_prev_);
  v_prev_ = v_curr_;
  u_curr_ = std::move(u_next);
  v_curr_ = std::move(v_next);
  gu_prev_ = std::move(gu_curr_);
  gu_curr_ = std::move(gu_next);
  if (p.sources_enabled) {
    f1_prev_ = std::move(f1_curr_);
    f2_prev_ = std::move(f2_curr_);
    f1_curr_ = std::move(f1_next);
    f2_curr_ = std::move(f2_next);
  }
  v_star_last_ = std::move(v_star);
  ++level_;

  if (opts_.recover_aux) {
    const double inv_tau = 1.0 / g.tau;
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 1; j < g.My; ++j) {
        const double dt_u = inv_tau * (u_curr_(i, j) - u_prev_(i, j));
        const double dt_v = inv_tau * (v_curr_(i, j) - v_prev_(i, j));
        p_curr_(i, j) = 2.0 * (dt_u - p.a12 * v_star_last_(i, j)) - p_curr_(i, j);
        q_curr_(i, j) = 2.0 * dt_v - q_curr_(i, j);
      }
  }
}

void CompactADIScheme::run_to_final_time() {
  while (level_ < grid_->N) advance();
}

std::pair<Field, Field> CompactADIScheme::last_step_residual() const {
  if (level_ < 1) throw std::logic_error("last_step_residual: no step taken yet");
  const Grid2D& g = *grid_;
  const ModelParams& p = inst_->params;
  const double tau = g.tau;
  const Stencil3x3 hh = detail::compact_2d_stencil(g);
  const Stencil3x3 lam = detail::compact_laplacian_stencil(g);
  const Stencil3x3 mix = detail::mixed_fourth_stencil(g);

  Field u_bar = u_curr_, v_bar = v_curr_;
  average_into(u_bar, u_prev_);
  average_into(v_bar, v_prev_);
  Field dt_u(g), dt_v(g);
  {
    const double inv_tau = 1.0 / tau;
    auto& du = dt_u.data();
    auto& dv = dt_v.data();
    const auto& uc = u_curr_.data();
    const auto& up = u_prev_.data();
    const auto& vc = v_curr_.data();
    const auto& vp = v_prev_.data();
    for (size_t k = 0; k < du.size(); ++k) {
      du[k] = inv_tau * (uc[k] - up[k]);
      dv[k] = inv_tau * (vc[k] - vp[k]);
    }
  }

  Field p_bar = dt_u;  // half-step auxiliary average from the defining relation
  {
    auto& pb = p_bar.data();
    const auto& vs = v_star_last_.data();
    for (size_t k = 0; k < pb.size(); ++k) pb[k] -= p.a12 * vs[k];
  }
  const Field& q_bar = dt_v;

  Field ru(g);
  detail::accumulate_stencil(lam, u_bar, -p.d1, ru);
  detail::accumulate_stencil(hh, u_bar, p.a11, ru);
  detail::accumulate_stencil(mix, dt_u, 0.25 * p.d1 * p.d1 * tau * tau, ru);
  detail::accumulate_stencil(lam, dt_u, -0.125 * p.d1 * p.a11 * tau * tau, ru);
  detail::accumulate_stencil(hh, dt_u, 0.0625 * p.a11 * p.a11 * tau * tau, ru);
  detail::accumulate_stencil(hh, p_bar, 1.0, ru);

  Field rv(g);
  detail::accumulate_stencil(lam, v_bar, -p.d2, rv);
  detail::accumulate_stencil(hh, v_bar, p.a22, rv);
  Field gavg = gu_curr_;
  average_into(gavg, gu_prev_);
  detail::accumulate_stencil(hh, gavg, -1.0, rv);
  detail::accumulate_stencil(mix, dt_v, 0.25 * p.d2 * p.d2 * tau * tau, rv);
  detail::accumulate_stencil(lam, dt_v, -0.125 * p.d2 * p.a22 * tau * tau, rv);
  detail::accumulate_stencil(hh, dt_v, 0.0625 * p.a22 * p.a22 * tau * tau, rv);
  detail::accumulate_stencil(hh, q_bar, 1.0, rv);

  if (p.sources_enabled) {
    Field f1avg = f1_curr_, f2avg = f2_curr_;
    average_into(f1avg, f1_prev_);
    average_into(f2avg, f2_prev_);
    detail::accumulate_stencil(hh, f1avg, -1.0, ru);
    detail::accumulate_stencil(hh, f2avg, -1.0, rv);
  }
  ru.zero_boundary();
  rv.zero_boundary();
  return {std::move(ru), std::move(rv)};
}

}  // namespace bacterial
