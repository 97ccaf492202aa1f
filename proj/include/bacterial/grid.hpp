#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bacterial {

// Uniform tensor-product grid on the unit square with time-step metadata.
struct Grid2D {
  int Mx = 0;
  int My = 0;
  double hx = 0.0;
  double hy = 0.0;
  double T = 0.0;
  int N = 0;
  double tau = 0.0;

  Grid2D() = default;
  Grid2D(int mx, int my, double final_time, int steps)
      : Mx(mx), My(my), T(final_time), N(steps) {
    if (mx < 2 || my < 2) throw std::invalid_argument("Grid2D: node counts must be >= 2");
    if (steps < 1) throw std::invalid_argument("Grid2D: time-step count must be >= 1");
    if (!(final_time > 0.0)) throw std::invalid_argument("Grid2D: final time must be positive");
    hx = 1.0 / mx;
    hy = 1.0 / my;
    tau = final_time / steps;
  }

  double x(int i) const { return i * hx; }
  double y(int j) const { return j * hy; }
  double t(int n) const { return n * tau; }

  int nodes_x() const { return Mx + 1; }
  int nodes_y() const { return My + 1; }

  bool operator==(const Grid2D& o) const {
    return Mx == o.Mx && My == o.My && N == o.N && T == o.T;
  }
};

// Scalar grid function on the full node set, row index i in [0,Mx],
// column index j in [0,My]. Members of the homogeneous-Dirichlet space
// hold exact zeros on the boundary.
class Field {
 public:
  explicit Field(const Grid2D& grid)
      : grid_(grid), values_(static_cast<size_t>(grid.nodes_x()) * grid.nodes_y(), 0.0) {}

  // the grid is stored by value so a Field stays valid after the grid
  // object it was created from goes away
  const Grid2D& grid() const { return grid_; }

  double& operator()(int i, int j) { return values_[static_cast<size_t>(i) * grid_.nodes_y() + j]; }
  double operator()(int i, int j) const { return values_[static_cast<size_t>(i) * grid_.nodes_y() + j]; }

  std::vector<double>& data() { return values_; }
  const std::vector<double>& data() const { return values_; }

  bool same_grid(const Field& other) const { return grid_ == other.grid_; }

  void fill(double c) { for (auto& v : values_) v = c; }

  void zero_boundary() {
    for (int i = 0; i <= grid_.Mx; ++i) {
      (*this)(i, 0) = 0.0;
      (*this)(i, grid_.My) = 0.0;
    }
    for (int j = 0; j <= grid_.My; ++j) {
      (*this)(0, j) = 0.0;
      (*this)(grid_.Mx, j) = 0.0;
    }
  }

  bool is_boundary_zero(double tol = 0.0) const {
    for (int i = 0; i <= grid_.Mx; ++i)
      if (std::abs((*this)(i, 0)) > tol || std::abs((*this)(i, grid_.My)) > tol) return false;
    for (int j = 0; j <= grid_.My; ++j)
      if (std::abs((*this)(0, j)) > tol || std::abs((*this)(grid_.Mx, j)) > tol) return false;
    return true;
  }

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

inline void require_same_grid(const Field& a, const Field& b) {
  if (!a.same_grid(b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace bacterial
