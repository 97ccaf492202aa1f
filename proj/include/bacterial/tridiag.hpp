#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace bacterial {

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tridiagonal coefficients; lower/upper hold n-1 entries.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  size_t size() const { return diag.size(); }

  static Tridiagonal constant(size_t n, double lo, double di, double up) {
    Tridiagonal t;
    t.lower.assign(n > 0 ? n - 1 : 0, lo);
    t.diag.assign(n, di);
    t.upper.assign(n > 0 ? n - 1 : 0, up);
    return t;
  }
};

// Thomas algorithm: single forward elimination and back substitution,
// no pivoting. Throws SingularSystemError on a vanishing pivot.
std::vector<double> thomas_solve(const Tridiagonal& a, std::span<const double> rhs);

// In-place variant reusing caller workspace; x and scratch must have size n.
void thomas_solve_inplace(const Tridiagonal& a, std::span<const double> rhs,
                          std::span<double> x, std::span<double> scratch);

// Precomputed LU form of a tridiagonal matrix, for repeated solves against
// the same operator (the elimination and its divisions are done once).
class TridiagonalFactorization {
 public:
  TridiagonalFactorization() = default;
  explicit TridiagonalFactorization(const Tridiagonal& a);  // throws on zero pivot

  size_t size() const { return inv_piv_.size(); }
  // x may alias rhs
  void solve(std::span<const double> rhs, std::span<double> x) const;

  // In-place solve of `batch_count` independent systems laid out on a
  // strided grid: row k of system b lives at data[k*row_stride +
  // b*batch_stride]. The elimination runs once per row across the whole
  // batch, so the inner loops vectorize instead of stalling on the
  // per-system recurrence.
  void solve_strided_batch(double* data, size_t row_stride, size_t batch_count,
                           size_t batch_stride) const;

 private:
  std::vector<double> lower_;      // original subdiagonal
  std::vector<double> upper_mod_;  // upper diagonal scaled by the pivots
  std::vector<double> inv_piv_;    // reciprocal pivots
};

}  // namespace bacterial
