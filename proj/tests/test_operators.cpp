#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bacterial/checks.hpp"
#include "bacterial/operators.hpp"

using namespace bacterial;

namespace {

constexpr double kPi = std::numbers::pi;

Field sample(const Grid2D& g, double (*f)(double, double)) {
  Field v(g);
  for (int i = 0; i <= g.Mx; ++i)
    for (int j = 0; j <= g.My; ++j) v(i, j) = f(g.x(i), g.y(j));
  return v;
}

double max_abs(const Field& v) {
  double m = 0.0;
  for (double x : v.data()) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

}  // namespace

TEST_CASE("second difference is exact on quadratics") {
  Grid2D g(8, 6, 1.0, 1);
  Field v = sample(g, [](double x, double) { return x * x; });
  Field d = second_diff(v, Axis::X);
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) CHECK(d(i, j) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(d.is_boundary_zero());

  Field w = sample(g, [](double, double y) { return 3.0 * y * y; });
  Field dy = second_diff(w, Axis::Y);
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) CHECK(dy(i, j) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("second difference of zero is zero") {
  Grid2D g(5, 7, 1.0, 1);
  Field z(g);
  CHECK(max_abs(second_diff(z, Axis::X)) == 0.0);
  CHECK(max_abs(second_diff(z, Axis::Y)) == 0.0);
}

TEST_CASE("second difference on a frozen slice") {
  // values along x: 0, sqrt(2)/2, 1, sqrt(2)/2, 0 on a 4-interval grid
  Grid2D g(4, 4, 1.0, 1);
  const double s = std::sqrt(2.0) / 2.0;
  const double slice[5] = {0.0, s, 1.0, s, 0.0};
  Field v(g);
  for (int i = 0; i <= 4; ++i)
    for (int j = 1; j < 4; ++j) v(i, j) = slice[i];
  Field d = second_diff(v, Axis::X);
  // (s - 2 + s) / h^2 with h = 1/4
  const double expected = 16.0 * (std::sqrt(2.0) - 2.0);
  CHECK(d(2, 2) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("mixed fourth difference commutes") {
  Grid2D g(9, 6, 1.0, 1);
  Field v = random_interior_field(g, 17);
  Field xy = second_diff(second_diff(v, Axis::X), Axis::Y);
  Field yx = second_diff(second_diff(v, Axis::Y), Axis::X);
  Field m = mixed_fourth_diff(v);
  const double scale = std::max(1.0, max_abs(m));
  CHECK(max_diff(xy, yx) <= 1e-12 * scale);
  CHECK(max_diff(m, xy) <= 1e-12 * scale);
}

TEST_CASE("mixed fourth difference on x^2 y^2") {
  Grid2D g(5, 5, 1.0, 1);
  Field v = sample(g, [](double x, double y) { return x * x * y * y; });
  Field m = mixed_fourth_diff(v);
  // stay one node away from the boundary: the composition zeroes the
  // intermediate boundary rows, which only matters for non-vanishing data
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(m(i, j) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("compact average on a frozen slice") {
  Grid2D g(4, 4, 1.0, 1);
  const double s = std::sqrt(2.0) / 2.0;
  const double slice[5] = {0.0, s, 1.0, s, 0.0};
  Field v(g);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) v(i, j) = slice[i];
  Field a = compact_x(v);
  // (s + 10 + s) / 12 at the midpoint
  CHECK(a(2, 2) == doctest::Approx((10.0 + std::sqrt(2.0)) / 12.0).epsilon(1e-13));
  // boundary columns pass through
  CHECK(a(0, 2) == v(0, 2));
  CHECK(a(4, 2) == v(4, 2));
}

TEST_CASE("compact 2d operator factors either way") {
  Grid2D g(7, 11, 1.0, 1);
  Field v = random_interior_field(g, 23);
  Field a = compact_x(compact_y(v));
  Field b = compact_y(compact_x(v));
  Field c = compact_2d(v);
  CHECK(max_diff(a, b) <= 1e-14);
  CHECK(max_diff(a, c) <= 1e-14);
}

TEST_CASE("compact average preserves constants on interior slabs") {
  Grid2D g(6, 6, 1.0, 1);
  Field v(g);
  v.fill(1.0);
  Field a = compact_x(v);
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j) CHECK(a(i, j) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inner product on a frozen field") {
  // all interior nodes equal 1 on a 4x4 grid: 9 nodes * (1/16)
  Grid2D g(4, 4, 1.0, 1);
  Field v(g);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) v(i, j) = 1.0;
  CHECK(inner_product(v, v) == doctest::Approx(0.5625).epsilon(1e-14));
  Field z(g);
  CHECK(inner_product(v, z) == 0.0);
}

TEST_CASE("inner product ignores boundary values") {
  Grid2D g(5, 5, 1.0, 1);
  Field v = random_interior_field(g, 3);
  Field w = v;
  for (int i = 0; i <= 5; ++i) w(i, 0) = 42.0;
  CHECK(inner_product(v, v) == doctest::Approx(inner_product(w, w)));
}

TEST_CASE("Cauchy-Schwarz on random fields") {
  Grid2D g(9, 7, 1.0, 1);
  for (unsigned long seed = 1; seed <= 5; ++seed) {
    Field v = random_interior_field(g, seed);
    Field w = random_interior_field(g, seed + 100);
    CHECK(std::abs(inner_product(v, w)) <= l2_norm(v) * l2_norm(w) * (1.0 + 1e-12));
  }
}

TEST_CASE("norm suite on simple fields") {
  Grid2D g(6, 6, 1.0, 1);
  Field z(g);
  NormSuite nz = norms(z);
  CHECK(nz.l2 == 0.0);
  CHECK(nz.max == 0.0);
  CHECK(nz.h1_semi == 0.0);
  CHECK(nz.h2_semi == 0.0);

  Field v(g);
  v.fill(1.0);
  v(3, 3) = 3.0;
  CHECK(max_norm(v) == doctest::Approx(3.0));
}

TEST_CASE("compact laplacian matches operator composition") {
  Grid2D g(8, 5, 1.0, 1);
  Field v = random_interior_field(g, 7);
  Field lhs = compact_laplacian(v);
  Field a = compact_y(second_diff(v, Axis::X));
  Field b = compact_x(second_diff(v, Axis::Y));
  Field sum(g);
  for (size_t k = 0; k < sum.data().size(); ++k) sum.data()[k] = a.data()[k] + b.data()[k];
  sum.zero_boundary();
  const double scale = std::max(1.0, max_abs(lhs));
  CHECK(max_diff(lhs, sum) <= 1e-12 * scale);
}
