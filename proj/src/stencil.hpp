#pragma once

#include "bacterial/grid.hpp"

// Fused 3x3 constant-coefficient stencils. On interior nodes the compact
// average, the compact Laplacian and the mixed fourth difference are all
// tensor-product 3x3 stencils, so scheme operators collapse into a single
// pass over the grid.

namespace bacterial::detail {

struct Stencil3x3 {
  double c[3][3] = {};

  Stencil3x3& axpy(double s, const Stencil3x3& o) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) c[a][b] += s * o.c[a][b];
    return *this;
  }
};

inline Stencil3x3 tensor(const double (&wx)[3], const double (&wy)[3]) {
  Stencil3x3 s;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s.c[a][b] = wx[a] * wy[b];
  return s;
}

inline Stencil3x3 compact_2d_stencil(const Grid2D&) {
  const double w[3] = {1.0 / 12.0, 10.0 / 12.0, 1.0 / 12.0};
  return tensor(w, w);
}

inline Stencil3x3 compact_laplacian_stencil(const Grid2D& g) {
  const double w[3] = {1.0 / 12.0, 10.0 / 12.0, 1.0 / 12.0};
  const double sx[3] = {1.0 / (g.hx * g.hx), -2.0 / (g.hx * g.hx), 1.0 / (g.hx * g.hx)};
  const double sy[3] = {1.0 / (g.hy * g.hy), -2.0 / (g.hy * g.hy), 1.0 / (g.hy * g.hy)};
  Stencil3x3 s = tensor(sx, w);
  return s.axpy(1.0, tensor(w, sy));
}

inline Stencil3x3 mixed_fourth_stencil(const Grid2D& g) {
  const double sx[3] = {1.0 / (g.hx * g.hx), -2.0 / (g.hx * g.hx), 1.0 / (g.hx * g.hx)};
  const double sy[3] = {1.0 / (g.hy * g.hy), -2.0 / (g.hy * g.hy), 1.0 / (g.hy * g.hy)};
  return tensor(sx, sy);
}

// out = stencil * in on interior nodes, zero on the boundary.
inline void apply_stencil(const Stencil3x3& s, const Field& in, Field& out) {
  const Grid2D& g = in.grid();
  const int ny = g.nodes_y();
  const double* src = in.data().data();
  double* dst = out.data().data();
  for (int i = 1; i < g.Mx; ++i) {
    const double* r0 = src + static_cast<size_t>(i - 1) * ny;
    const double* r1 = src + static_cast<size_t>(i) * ny;
    const double* r2 = src + static_cast<size_t>(i + 1) * ny;
    double* o = dst + static_cast<size_t>(i) * ny;
    for (int j = 1; j < g.My; ++j) {
      o[j] = s.c[0][0] * r0[j - 1] + s.c[0][1] * r0[j] + s.c[0][2] * r0[j + 1] +
             s.c[1][0] * r1[j - 1] + s.c[1][1] * r1[j] + s.c[1][2] * r1[j + 1] +
             s.c[2][0] * r2[j - 1] + s.c[2][1] * r2[j] + s.c[2][2] * r2[j + 1];
    }
  }
  out.zero_boundary();
}

// out += scale * (stencil * in) on interior nodes.
inline void accumulate_stencil(const Stencil3x3& s, const Field& in, double scale, Field& out) {
  const Grid2D& g = in.grid();
  const int ny = g.nodes_y();
  const double* src = in.data().data();
  double* dst = out.data().data();
  for (int i = 1; i < g.Mx; ++i) {
    const double* r0 = src + static_cast<size_t>(i - 1) * ny;
    const double* r1 = src + static_cast<size_t>(i) * ny;
    const double* r2 = src + static_cast<size_t>(i + 1) * ny;
    double* o = dst + static_cast<size_t>(i) * ny;
    for (int j = 1; j < g.My; ++j) {
      o[j] += scale * (s.c[0][0] * r0[j - 1] + s.c[0][1] * r0[j] + s.c[0][2] * r0[j + 1] +
                       s.c[1][0] * r1[j - 1] + s.c[1][1] * r1[j] + s.c[1][2] * r1[j + 1] +
                       s.c[2][0] * r2[j - 1] + s.c[2][1] * r2[j] + s.c[2][2] * r2[j + 1]);
    }
  }
}

}  // namespace bacterial::detail
