#pragma once

#include "bacterial/grid.hpp"

namespace bacterial {

enum class Axis { X, Y };

struct NormSuite {
  double l2 = 0.0;
  double max = 0.0;
  double h1_semi = 0.0;
  double h2_semi = 0.0;
  double staggered_xy = 0.0;  // norm of the staggered mixed first difference
};

// Three-point second difference along one axis; boundary rows of the
// output are zero.
Field second_diff(const Field& v, Axis axis);

// Fourth-order mixed difference: second difference in x composed with
// second difference in y.
Field mixed_fourth_diff(const Field& v);

// Compact averaging operator along x: (I + hx^2/12 d2x) on interior
// columns, pass-through on the two boundary columns.
Field compact_x(const Field& v);
Field compact_y(const Field& v);

// Two-dimensional compact operator: composition of the x and y averages.
Field compact_2d(const Field& v);

// Compact Laplacian surrogate: y-average of d2x plus x-average of d2y.
Field compact_laplacian(const Field& v);

// Discrete L2 inner product over interior nodes.
double inner_product(const Field& v, const Field& w);

double l2_norm(const Field& v);
double max_norm(const Field& v);  // over interior nodes

NormSuite norms(const Field& v);

}  // namespace bacterial
