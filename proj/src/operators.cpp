#include "bacterial/operators.hpp"

#include <algorithm>
#include <cmath>

namespace bacterial {

Field second_diff(const Field& v, Axis axis) {
  const Grid2D& g = v.grid();
  Field out(g);
  if (axis == Axis::X) {
    const double inv = 1.0 / (g.hx * g.hx);
    for (int i = 1; i < g.Mx; ++i)
      for (int j = 0; j <= g.My; ++j)
        out(i, j) = inv * (v(i - 1, j) - 2.0 * v(i, j) + v(i + 1, j));
  } else {
    const double inv = 1.0 / (g.hy * g.hy);
    for (int i = 0; i <= g.Mx; ++i)
      for (int j = 1; j < g.My; ++j)
        out(i, j) = inv * (v(i, j - 1) - 2.0 * v(i, j) + v(i, j + 1));
  }
  out.zero_boundary();
  return out;
}

Field mixed_fourth_diff(const Field& v) {
  return second_diff(second_diff(v, Axis::X), Axis::Y);
}

Field compact_x(const Field& v) {
  const Grid2D& g = v.grid();
  Field out(g);
  for (int j = 0; j <= g.My; ++j) {
    out(0, j) = v(0, j);
    out(g.Mx, j) = v(g.Mx, j);
  }
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 0; j <= g.My; ++j)
      out(i, j) = (v(i - 1, j) + 10.0 * v(i, j) + v(i + 1, j)) / 12.0;
  return out;
}

Field compact_y(const Field& v) {
  const Grid2D& g = v.grid();
  Field out(g);
  for (int i = 0; i <= g.Mx; ++i) {
    out(i, 0) = v(i, 0);
    out(i, g.My) = v(i, g.My);
  }
  for (int i = 0; i <= g.Mx; ++i)
    for (int j = 1; j < g.My; ++j)
      out(i, j) = (v(i, j - 1) + 10.0 * v(i, j) + v(i, j + 1)) / 12.0;
  return out;
}

Field compact_2d(const Field& v) { return compact_x(compact_y(v)); }

Field compact_laplacian(const Field& v) {
  Field out = compact_y(second_diff(v, Axis::X));
  Field xy = compact_x(second_diff(v, Axis::Y));
  require_same_grid(out, xy);
  auto& a = out.data();
  const auto& b = xy.data();
  for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  out.zero_boundary();
  return out;
}

double inner_product(const Field& v, const Field& w) {
  require_same_grid(v, w);
  const Grid2D& g = v.grid();
  double s = 0.0;
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j)
      s += v(i, j) * w(i, j);
  return g.hx * g.hy * s;
}

double l2_norm(const Field& v) { return std::sqrt(inner_product(v, v)); }

double max_norm(const Field& v) {
  const Grid2D& g = v.grid();
  double m = 0.0;
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j)
      m = std::max(m, std::abs(v(i, j)));
  return m;
}

NormSuite norms(const Field& v) {
  const Grid2D& g = v.grid();
  NormSuite s;
  s.l2 = l2_norm(v);
  s.max = max_norm(v);

  // staggered first differences
  double dx2 = 0.0;
  for (int i = 1; i <= g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) {
      const double d = (v(i, j) - v(i - 1, j)) / g.hx;
      dx2 += d * d;
    }
  double dy2 = 0.0;
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j <= g.My; ++j) {
      const double d = (v(i, j) - v(i, j - 1)) / g.hy;
      dy2 += d * d;
    }
  const double w = g.hx * g.hy;
  s.h1_semi = std::sqrt(w * (dx2 + dy2));

  double dxy2 = 0.0;
  for (int i = 1; i <= g.Mx; ++i)
    for (int j = 1; j <= g.My; ++j) {
      const double d = (v(i, j) - v(i - 1, j) - v(i, j - 1) + v(i - 1, j - 1)) / (g.hx * g.hy);
      dxy2 += d * d;
    }
  s.staggered_xy = std::sqrt(w * dxy2);

  const Field vxx = second_diff(v, Axis::X);
  const Field vyy = second_diff(v, Axis::Y);
  const double nxx = l2_norm(vxx);
  const double nyy = l2_norm(vyy);
  s.h2_semi = std::sqrt(nxx * nxx + 2.0 * w * dxy2 + nyy * nyy);
  return s;
}

}  // namespace bacterial
