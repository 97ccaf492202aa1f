#include "bacterial/checks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bacterial/adi.hpp"
#include "bacterial/model.hpp"
#include "bacterial/operators.hpp"
#include "bacterial/solvers.hpp"
#include "bacterial/tridiag.hpp"
#include "stencil.hpp"

namespace bacterial {

namespace {

constexpr double kPi = std::numbers::pi;

struct GridShape {
  int Mx, My;
};
const GridShape kShapes[] = {{8, 8}, {16, 16}, {17, 9}};

// staggered first-difference norms used by the inequality checks
double staggered_x_norm_sq(const Field& v) {
  const Grid2D& g = v.grid();
  double s = 0.0;
  for (int i = 1; i <= g.Mx; ++i)
    for (int j = 1; j < g.My; ++j) {
      const double d = (v(i, j) - v(i - 1, j)) / g.hx;
      s += d * d;
    }
  return g.hx * g.hy * s;
}

double staggered_y_norm_sq(const Field& v) {
  const Grid2D& g = v.grid();
  double s = 0.0;
  for (int i = 1; i < g.Mx; ++i)
    for (int j = 1; j <= g.My; ++j) {
      const double d = (v(i, j) - v(i, j - 1)) / g.hy;
      s += d * d;
    }
  return g.hx * g.hy * s;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  const auto& ad = a.data();
  const auto& bd = b.data();
  for (size_t k = 0; k < ad.size(); ++k) m = std::max(m, std::abs(ad[k] - bd[k]));
  return m;
}

// dense LU with partial pivoting, the oracle for the tridiagonal solver
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t r = n; r-- > 0;) {
    double s = b[r];
    for (size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

CheckResult check_compact_bounds(unsigned long seed) {
  CheckResult res{"compact operator norm bounds", true, ""};
  for (const auto& sh : kShapes) {
    const Grid2D grid(sh.Mx, sh.My, 1.0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      const Field v = random_interior_field(grid, seed + 1000 * sh.Mx + trial);
      const double nv = l2_norm(v);
      const double tol = 1e-12 * std::max(1.0, nv * nv);

      const double nhx = l2_norm(compact_x(v));
      const double nhy = l2_norm(compact_y(v));
      const double nhh = l2_norm(compact_2d(v));
      const double ipx = inner_product(compact_x(v), v);
      const double ipy = inner_product(compact_y(v), v);
      const double sx = -inner_product(compact_y(second_diff(v, Axis::X)), v);
      const double sy = -inner_product(compact_x(second_diff(v, Axis::Y)), v);

      const bool ok =
          nhx >= (2.0 / 3.0) * nv - tol && nhx <= nv + tol &&
          nhy >= (2.0 / 3.0) * nv - tol && nhy <= nv + tol &&
          ipx >= (2.0 / 3.0) * nv * nv - tol && ipx <= nv * nv + tol &&
          ipy >= (2.0 / 3.0) * nv * nv - tol && ipy <= nv * nv + tol &&
          sx >= (2.0 / 3.0) * staggered_x_norm_sq(v) - tol &&
          sy >= (2.0 / 3.0) * staggered_y_norm_sq(v) - tol &&
          nhh >= (4.0 / 9.0) * nv - tol && nhh <= nv + tol;
      if (!ok) {
        res.pass = false;
        std::ostringstream os;
        os << "violated on grid " << sh.Mx << "x" << sh.My << " trial " << trial;
        res.detail = os.str();
        return res;
      }
    }
  }
  return res;
}

CheckResult check_sign_properties(unsigned long seed) {
  CheckResult res{"compact Laplacian sign properties", true, ""};
  for (const auto& sh : kShapes) {
    const Grid2D grid(sh.Mx, sh.My, 1.0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      const Field v = random_interior_field(grid, seed + 7 + 1000 * sh.My + trial);
      const Field hh = compact_2d(v);
      const Field lam = compact_laplacian(v);
      const Field mix = mixed_fourth_diff(v);
      const double scale = std::max({1.0, l2_norm(hh) * l2_norm(lam),
                                     l2_norm(mix) * l2_norm(hh), l2_norm(mix) * l2_norm(lam)});
      const double tol = 1e-12 * scale;
      if (!(inner_product(hh, lam) <= tol && inner_product(mix, hh) >= -tol &&
            inner_product(mix, lam) <= tol)) {
        res.pass = false;
        res.detail = "sign violated on grid " + std::to_string(sh.Mx) + "x" + std::to_string(sh.My);
        return res;
      }
    }
  }
  return res;
}

CheckResult check_symmetry_linearity(unsigned long seed) {
  CheckResult res{"operator symmetry and linearity", true, ""};
  for (const auto& sh : kShapes) {
    const Grid2D grid(sh.Mx, sh.My, 1.0, 1);
    for (int trial = 0; trial < 25; ++trial) {
      const Field v = random_interior_field(grid, seed + 31 + trial + sh.Mx);
      const Field w = random_interior_field(grid, seed + 57 + trial + sh.My);
      const double scale = std::max(1.0, l2_norm(v) * l2_norm(w));
      const double lam_scale = scale * (1.0 / (grid.hx * grid.hx) + 1.0 / (grid.hy * grid.hy));
      if (std::abs(inner_product(compact_2d(v), w) - inner_product(v, compact_2d(w))) > 1e-12 * scale ||
          std::abs(inner_product(compact_laplacian(v), w) -
                   inner_product(v, compact_laplacian(w))) > 1e-12 * lam_scale) {
        res.pass = false;
        res.detail = "symmetry violated";
        return res;
      }

      Field combo(grid);
      const double alpha = 0.7, beta = -1.3;
      for (size_t k = 0; k < combo.data().size(); ++k)
        combo.data()[k] = alpha * v.data()[k] + beta * w.data()[k];
      for (auto op : {+[](const Field& f) { return second_diff(f, Axis::X); },
                      +[](const Field& f) { return second_diff(f, Axis::Y); },
                      +[](const Field& f) { return mixed_fourth_diff(f); },
                      +[](const Field& f) { return compact_2d(f); },
                      +[](const Field& f) { return compact_laplacian(f); }}) {
        Field lhs = op(combo);
        const Field ov = op(v);
        const Field ow = op(w);
        double m = 0.0, mag = 0.0;
        for (size_t k = 0; k < lhs.data().size(); ++k) {
          const double expect = alpha * ov.data()[k] + beta * ow.data()[k];
          m = std::max(m, std::abs(lhs.data()[k] - expect));
          mag = std::max(mag, std::abs(expect));
        }
        if (m > 1e-12 * std::max(1.0, mag)) {
          res.pass = false;
          res.detail = "linearity violated";
          return res;
        }
      }
    }
  }
  return res;
}

CheckResult check_thomas_vs_dense(unsigned long seed) {
  CheckResult res{"tridiagonal solve vs dense oracle", true, ""};
  std::mt19937_64 rng(seed + 101);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (size_t n : {6u, 50u, 512u}) {
    Tridiagonal t;
    t.lower.resize(n - 1);
    t.upper.resize(n - 1);
    t.diag.resize(n);
    std::vector<double> rhs(n);
    for (size_t k = 0; k < n - 1; ++k) {
      t.lower[k] = uni(rng);
      t.upper[k] = uni(rng);
    }
    for (size_t k = 0; k < n; ++k) {
      const double lo = k > 0 ? std::abs(t.lower[k - 1]) : 0.0;
      const double up = k < n - 1 ? std::abs(t.upper[k]) : 0.0;
      t.diag[k] = (uni(rng) > 0 ? 1.0 : -1.0) * (lo + up + 0.5 + std::abs(uni(rng)));
      rhs[k] = uni(rng);
    }
    const std::vector<double> x = thomas_solve(t, rhs);

    // residual bound
    double row_norm = 0.0, xn = 0.0, bn = 0.0, resid = 0.0;
    for (size_t k = 0; k < n; ++k) {
      double ax = t.diag[k] * x[k];
      double row = std::abs(t.diag[k]);
      if (k > 0) { ax += t.lower[k - 1] * x[k - 1]; row += std::abs(t.lower[k - 1]); }
      if (k < n - 1) { ax += t.upper[k] * x[k + 1]; row += std::abs(t.upper[k]); }
      resid = std::max(resid, std::abs(ax - rhs[k]));
      row_norm = std::max(row_norm, row);
      xn = std::max(xn, std::abs(x[k]));
      bn = std::max(bn, std::abs(rhs[k]));
    }
    if (resid > 1e-12 * (row_norm * xn + bn)) {
      res.pass = false;
      res.detail = "residual too large at n=" + std::to_string(n);
      return res;
    }

    if (n <= 64) {
      std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
      for (size_t k = 0; k < n; ++k) {
        dense[k][k] = t.diag[k];
        if (k > 0) dense[k][k - 1] = t.lower[k - 1];
        if (k < n - 1) dense[k][k + 1] = t.upper[k];
      }
      const std::vector<double> ref = dense_solve(dense, rhs);
      for (size_t k = 0; k < n; ++k)
        if (std::abs(x[k] - ref[k]) > 1e-12 * std::max(1.0, std::abs(ref[k]))) {
          res.pass = false;
          res.detail = "mismatch with dense oracle at n=" + std::to_string(n);
          return res;
        }
    }
  }
  return res;
}

CheckResult check_compact_inverse(unsigned long seed) {
  CheckResult res{"compact inversion round trip", true, ""};
  for (const auto& sh : kShapes) {
    const Grid2D grid(sh.Mx, sh.My, 1.0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Field v = random_interior_field(grid, seed + 211 + trial + sh.Mx * 3);
      const double scale = std::max(1.0, max_norm(v));
      if (max_abs_diff(solve_compact_2d(compact_2d(v)), v) > 1e-11 * scale ||
          max_abs_diff(compact_2d(solve_compact_2d(v)), v) > 1e-11 * scale) {
        res.pass = false;
        res.detail = "round trip failed on grid " + std::to_string(sh.Mx) + "x" + std::to_string(sh.My);
        return res;
      }
    }
  }
  return res;
}

CheckResult check_adi_factorization(unsigned long seed) {
  CheckResult res{"factored sweep expansion identity", true, ""};
  std::mt19937_64 rng(seed + 307);
  std::uniform_real_distribution<double> coef(1e-3, 2.0);
  for (const auto& sh : kShapes) {
    const Grid2D grid(sh.Mx, sh.My, 1.0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Field v = random_interior_field(grid, seed + 401 + trial + sh.My * 5);
      const double d = coef(rng), a = coef(rng), tau = coef(rng);

      Field fact = apply_sweep_operator(apply_sweep_operator(v, Axis::Y, d, a, tau), Axis::X, d, a, tau);

      const double c = 1.0 + 0.25 * a * tau;
      const Field hh = compact_2d(v);
      const Field lam = compact_laplacian(v);
      const Field mix = mixed_fourth_diff(v);
      double m = 0.0, mag = 0.0;
      for (int i = 1; i < grid.Mx; ++i)
        for (int j = 1; j < grid.My; ++j) {
          const double expect = c * c * hh(i, j) - 0.5 * d * tau * c * lam(i, j) +
                                0.25 * d * d * tau * tau * mix(i, j);
          m = std::max(m, std::abs(fact(i, j) - expect));
          mag = std::max(mag, std::abs(expect));
        }
      if (m > 1e-12 * std::max(1.0, mag)) {
        res.pass = false;
        res.detail = "expansion mismatch on grid " + std::to_string(sh.Mx) + "x" + std::to_string(sh.My);
        return res;
      }
    }
  }
  return res;
}

CheckResult check_adi_residual(unsigned long) {
  CheckResult res{"factored step satisfies perturbed coupled form", true, ""};
  const ProblemInstance inst = extinction_problem();
  for (const auto& sh : kShapes) {
    const Grid2D grid(sh.Mx, sh.My, 0.5, 5);
    SchemeOptions opts;
    CompactADIScheme solver(grid, inst, opts);
    for (int n = 0; n < 3; ++n) {
      solver.advance();
      const auto [ru, rv] = solver.last_step_residual();
      const double scale = std::max(1.0, std::max(max_norm(solver.u()), max_norm(solver.v())));
      if (max_norm(ru) > 1e-10 * scale || max_norm(rv) > 1e-10 * scale) {
        res.pass = false;
        res.detail = "residual too large at level " + std::to_string(solver.level());
        return res;
      }
    }
  }
  return res;
}

CheckResult check_consistency_order(unsigned long) {
  CheckResult res{"compact Laplacian consistency order", true, ""};
  auto consistency_error = [](int M) {
    const Grid2D grid(M, M, 1.0, 1);
    Field w(grid), lap(grid);
    for (int i = 0; i <= M; ++i)
      for (int j = 0; j <= M; ++j) {
        const double s = std::sin(kPi * grid.x(i)) * std::sin(kPi * grid.y(j));
        w(i, j) = s;
        lap(i, j) = -2.0 * kPi * kPi * s;
      }
    const Field lhs = compact_2d(lap);
    const Field rhs = compact_laplacian(w);
    Field diff = lhs;
    for (size_t k = 0; k < diff.data().size(); ++k) diff.data()[k] -= rhs.data()[k];
    diff.zero_boundary();
    return l2_norm(diff);
  };
  for (int M : {16, 32}) {
    const double ratio = consistency_error(M) / consistency_error(2 * M);
    if (ratio < 14.0 || ratio > 18.0) {
      res.pass = false;
      std::ostringstream os;
      os << "ratio " << ratio << " at M=" << M;
      res.detail = os.str();
      return res;
    }
  }
  return res;
}

}  // namespace

Field random_interior_field(const Grid2D& grid, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Field v(grid);
  for (int i = 1; i < grid.Mx; ++i)
    for (int j = 1; j < grid.My; ++j)
      v(i, j) = uni(rng);
  return v;
}

std::vector<CheckResult> run_all_checks(unsigned long seed) {
  return {
      check_compact_bounds(seed),
      check_sign_properties(seed),
      check_symmetry_linearity(seed),
      check_thomas_vs_dense(seed),
      check_compact_inverse(seed),
      check_adi_factorization(seed),
      check_adi_residual(seed),
      check_consistency_order(seed),
  };
}

}  // namespace bacterial
