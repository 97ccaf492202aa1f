#include "bacterial/cncfd.hpp"

#include <stdexcept>

#include "bacterial/operators.hpp"
#include "stencil.hpp"

namespace bacterial {

using detail::Stencil3x3;

Field extrapolate_star(const Field& v_prev, const Field* v_prev2, int target_level) {
  if (target_level < 1) throw std::invalid_argument("extrapolate_star: target level must be >= 1");
  if (target_level == 1) return v_prev;
  if (v_prev2 == nullptr)
    throw std::logic_error("extrapolate_star: missing second history level");
  require_same_grid(v_prev, *v_prev2);
  Field out = v_prev;
  auto& o = out.data();
  const auto& b = v_prev2->data();
  for (size_t k = 0; k < o.size(); ++k) o[k] = 1.5 * o[k] - 0.5 * b[k];
  return out;
}

CompactCNScheme::CompactCNScheme(const Grid2D& grid, const ProblemInstance& inst, SchemeOptions opts)
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
      aux_{Field(grid), Field(grid), Field(grid), Field(grid)},
      gu_curr_(grid),
      f1_curr_(grid),
      f2_curr_(grid) {
  inst.params.validate();
  max_iter_ = opts.max_iter > 0 ? opts.max_iter : 10 * grid.Mx * grid.My;

  auto [u0, v0] = sample_initial(inst, grid);
  u_curr_ = std::move(u0);
  v_curr_ = std::move(v0);
  aux_ = initial_aux(u_curr_, v_curr_, inst);
  p_curr_ = aux_.P0;
  q_curr_ = aux_.Q0;
  gu_curr_ = infection_field(u_curr_);
  if (inst.params.sources_enabled) {
    f1_curr_ = sample_source(false, 0.0);
    f2_curr_ = sample_source(true, 0.0);
  }
}

const Field& CompactCNScheme::p() const {
  if (!opts_.recover_aux && level_ > 0)
    throw std::logic_error("auxiliary recovery disabled for this run");
  return p_curr_;
}

const Field& CompactCNScheme::q() const {
  if (!opts_.recover_aux && level_ > 0)
    throw std::logic_error("auxiliary recovery disabled for this run");
  return q_curr_;
}

Field CompactCNScheme::sample_source(bool second, double t) const {
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

Field CompactCNScheme::infection_field(const Field& u) const {
  Field out(*grid_);
  for (int i = 1; i < grid_->Mx; ++i)
    for (int j = 1; j < grid_->My; ++j)
      out(i, j) = infection(inst_->params.g_kind, u(i, j));
  return out;
}

void CompactCNScheme::advance() {
  if (level_ == 0)
    first_step();
  else
    general_step();
  ++level_;
}

void CompactCNScheme::run_to_final_time() {
  while (level_ < grid_->N) advance();
}

namespace {

// (1 + a tau/2) Hh - (d tau/2) Lambda, the left-hand operator of each solve
Stencil3x3 implicit_stencil(const Grid2D& g, double d, double a) {
  Stencil3x3 s = detail::compact_2d_stencil(g);
  Stencil3x3 out;
  out.axpy(1.0 + 0.5 * a * g.tau, s);
  out.axpy(-0.5 * d * g.tau, detail::compact_laplacian_stencil(g));
  return out;
}

// (1 - a tau/2) Hh + (d tau/2) Lambda, applied to the previous level
Stencil3x3 explicit_stencil(const Grid2D& g, double d, double a) {
  Stencil3x3 out;
  out.axpy(1.0 - 0.5 * a * g.tau, detail::compact_2d_stencil(g));
  out.axpy(0.5 * d * g.tau, detail::compact_laplacian_stencil(g));
  return out;
}

ApplyFn stencil_apply(const Stencil3x3& s) {
  return [s](const Field& in, Field& out) { detail::apply_stencil(s, in, out); };
}

}  // namespace

void CompactCNScheme::first_step() {
  const Grid2D& g = *grid_;
  const ModelParams& p = inst_->params;
  const double tau = g.tau;
  const Stencil3x3 hh = detail::compact_2d_stencil(g);

  const Field v_star = extrapolate_star(v_curr_, nullptr, 1);

  // U system
  Field rhs(g);
  detail::apply_stencil(hh, u_curr_, rhs);
  {
    auto& r = rhs.data();
    const auto& hp = aux_.HhP0.data();
    for (size_t k = 0; k < r.size(); ++k) r[k] += 0.5 * tau * hp[k];
  }
  // full coupling weight: the initial auxiliary value carries no v term,
  // so the extrapolated v enters the first step unhalved
  detail::accumulate_stencil(hh, v_star, tau * p.a12, rhs);
  std::optional<Field> f1_next, f2_next;
  if (p.sources_enabled) {
    f1_next = sample_source(false, g.t(1));
    f2_next = sample_source(true, g.t(1));
    detail::accumulate_stencil(hh, *f1_next, 0.5 * tau, rhs);
  }
  rhs.zero_boundary();
  auto [u_next, rep_u] = solve_spd(stencil_apply(implicit_stencil(g, p.d1, p.a11)),
                                   rhs, opts_.solver_tol, max_iter_);
  report_u_ = rep_u;

  // V system; the infection term is evaluated at the new level, which is
  // already known, so the solve stays linear
  const Field gu_next = infection_field(u_next);
  Field rhs_v(g);
  detail::apply_stencil(hh, v_curr_, rhs_v);
  {
    auto& r = rhs_v.data();
    const auto& hq = aux_.HhQ0.data();
    for (size_t k = 0; k < r.size(); ++k) r[k] += 0.5 * tau * hq[k];
  }
  detail::accumulate_stencil(hh, gu_next, 0.5 * tau, rhs_v);
  if (p.sources_enabled) detail::accumulate_stencil(hh, *f2_next, 0.5 * tau, rhs_v);
  rhs_v.zero_boundary();
  auto [v_next, rep_v] = solve_spd(stencil_apply(implicit_stencil(g, p.d2, p.a22)),
                                   rhs_v, opts_.solver_tol, max_iter_);
  report_v_ = rep_v;

  u_prev_ = std::move(u_curr_);
  v_prev2_ = v_prev_;
  v_prev_ = v_curr_;
  u_curr_ = std::move(u_next);
  v_curr_ = std::move(v_next);
  gu_curr_ = gu_next;
  if (p.sources_enabled) {
    f1_curr_ = std::move(*f1_next);
    f2_curr_ = std::move(*f2_next);
  }
  if (opts_.recover_aux) recover_aux_fields(v_star);
}

void CompactCNScheme::general_step() {
  const Grid2D& g = *grid_;
  const ModelParams& p = inst_->params;
  const double tau = g.tau;
  const Stencil3x3 hh = detail::compact_2d_stencil(g);
  const int next = level_ + 1;

  const Field v_star = extrapolate_star(v_curr_, &v_prev_, next);

  Field rhs(g);
  detail::apply_stencil(explicit_stencil(g, p.d1, p.a11), u_curr_, rhs);
  detail::accumulate_stencil(hh, v_star, tau * p.a12, rhs);
  std::optional<Field> f1_next, f2_next;
  if (p.sources_enabled) {
    f1_next = sample_source(false, g.t(next));
    f2_next = sample_source(true, g.t(next));
    Field favg = *f1_next;
    auto& fa = favg.data();
    const auto& fp = f1_curr_.data();
    for (size_t k = 0; k < fa.size(); ++k) fa[k] = 0.5 * (fa[k] + fp[k]);
    detail::accumulate_stencil(hh, favg, tau, rhs);
  }
  rhs.zero_boundary();
  auto [u_next, rep_u] = solve_spd(stencil_apply(implicit_stencil(g, p.d1, p.a11)),
                                   rhs, opts_.solver_tol, max_iter_);
  report_u_ = rep_u;

  const Field gu_next = infection_field(u_next);
  Field gavg = gu_next;
  {
    auto& ga = gavg.data();
    const auto& gp = gu_curr_.data();
    for (size_t k = 0; k < ga.size(); ++k) ga[k] = 0.5 * (ga[k] + gp[k]);
  }
  Field rhs_v(g);
  detail::apply_stencil(explicit_stencil(g, p.d2, p.a22), v_curr_, rhs_v);
  detail::accumulate_stencil(hh, gavg, tau, rhs_v);
  if (p.sources_enabled) {
    Field favg = *f2_next;
    auto& fa = favg.data();
    const auto& fp = f2_curr_.data();
    for (size_t k = 0; k < fa.size(); ++k) fa[k] = 0.5 * (fa[k] + fp[k]);
    detail::accumulate_stencil(hh, favg, tau, rhs_v);
  }
  rhs_v.zero_boundary();
  auto [v_next, rep_v] = solve_spd(stencil_apply(implicit_stencil(g, p.d2, p.a22)),
                                   rhs_v, opts_.solver_tol, max_iter_);
  report_v_ = rep_v;

  u_prev_ = std::move(u_curr_);
  v_prev2_ = std::move(v_prev_);
  v_prev_ = v_curr_;
  u_curr_ = std::move(u_next);
  v_curr_ = std::move(v_next);
  gu_curr_ = gu_next;
  if (p.sources_enabled) {
    f1_curr_ = std::move(*f1_next);
    f2_curr_ = std::move(*f2_next);
  }
  if (opts_.recover_aux) recover_aux_fields(v_star);
}

void CompactCNScheme::recover_aux_fields(const Field& v_star) {
  const Grid2D& g = *grid_;
  const double inv_tau = 1.0 / g.tau;
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) {
      const double dt_u = inv_tau * (u_curr_(i, j) - u_prev_(i, j));
      const double dt_v = inv_tau * (v_curr_(i, j) - v_prev_(i, j));
      p_curr_(i, j) = 2.0 * (dt_u - inst_->params.a12 * v_star(i, j)) - p_curr_(i, j);
      q_curr_(i, j) = 2.0 * dt_v - q_curr_(i, j);
    }
}

}  // namespace bacterial
