#include "bacterial/tridiag.hpp"

#include <cmath>

namespace bacterial {

void thomas_solve_inplace(const Tridiagonal& a, std::span<const double> rhs,
                          std::span<double> x, std::span<double> scratch) {
  const size_t n = a.size();
  if (rhs.size() != n || x.size() != n || scratch.size() != n)
    throw std::invalid_argument("thomas_solve: size mismatch");
  if (n == 0) return;

  // scratch holds the modified upper diagonal
  double piv = a.diag[0];
  if (piv == 0.0) throw SingularSystemError("thomas_solve: zero pivot at row 0");
  scratch[0] = n > 1 ? a.upper[0] / piv : 0.0;
  x[0] = rhs[0] / piv;
  for (size_t k = 1; k < n; ++k) {
    piv = a.diag[k] - a.lower[k - 1] * scratch[k - 1];
    if (piv == 0.0) throw SingularSystemError("thomas_solve: zero pivot");
    if (k < n - 1) scratch[k] = a.upper[k] / piv;
    x[k] = (rhs[k] - a.lower[k - 1] * x[k - 1]) / piv;
  }
  for (size_t k = n - 1; k-- > 0;) x[k] -= scratch[k] * x[k + 1];
}

std::vector<double> thomas_solve(const Tridiagonal& a, std::span<const double> rhs) {
  std::vector<double> x(a.size()), scratch(a.size());
  thomas_solve_inplace(a, rhs, x, scratch);
  return x;
}

TridiagonalFactorization::TridiagonalFactorization(const Tridiagonal& a)
    : lower_(a.lower), upper_mod_(a.size(), 0.0), inv_piv_(a.size(), 0.0) {
  const size_t n = a.size();
  if (n == 0) return;
  double piv = a.diag[0];
  if (piv == 0.0) throw SingularSystemError("tridiagonal factorization: zero pivot at row 0");
  inv_piv_[0] = 1.0 / piv;
  if (n > 1) upper_mod_[0] = a.upper[0] * inv_piv_[0];
  for (size_t k = 1; k < n; ++k) {
    piv = a.diag[k] - a.lower[k - 1] * upper_mod_[k - 1];
    if (piv == 0.0) throw SingularSystemError("tridiagonal factorization: zero pivot");
    inv_piv_[k] = 1.0 / piv;
    if (k < n - 1) upper_mod_[k] = a.upper[k] * inv_piv_[k];
  }
}

void TridiagonalFactorization::solve_strided_batch(double* data, size_t row_stride,
                                                   size_t batch_count,
                                                   size_t batch_stride) const {
  const size_t n = inv_piv_.size();
  if (n == 0 || batch_count == 0) return;
  for (size_t b = 0; b < batch_count; ++b) data[b * batch_stride] *= inv_piv_[0];
  for (size_t k = 1; k < n; ++k) {
    double* row = data + k * row_stride;
    const double* prev = row - row_stride;
    const double lo = lower_[k - 1];
    const double inv = inv_piv_[k];
    for (size_t b = 0; b < batch_count; ++b)
      row[b * batch_stride] = (row[b * batch_stride] - lo * prev[b * batch_stride]) * inv;
  }
  for (size_t k = n - 1; k-- > 0;) {
    double* row = data + k * row_stride;
    const double* next = row + row_stride;
    const double up = upper_mod_[k];
    for (size_t b = 0; b < batch_count; ++b) row[b * batch_stride] -= up * next[b * batch_stride];
  }
}

void TridiagonalFactorization::solve(std::span<const double> rhs, std::span<double> x) const {
  const size_t n = inv_piv_.size();
  if (rhs.size() != n || x.size() != n)
    throw std::invalid_argument("tridiagonal factorization solve: size mismatch");
  if (n == 0) return;
  x[0] = rhs[0] * inv_piv_[0];
  for (size_t k = 1; k < n; ++k) x[k] = (rhs[k] - lower_[k - 1] * x[k - 1]) * inv_piv_[k];
  for (size_t k = n - 1; k-- > 0;) x[k] -= upper_mod_[k] * x[k + 1];
}

}  // namespace bacterial
