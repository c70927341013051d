#pragma once

#include <memory>
#include <vector>

#include "mhduq/linalg/sparse_matrix.hpp"

namespace mhduq::linalg {

/// Sparse LU factorization (UMFPACK) of a square SparseMatrix.
///
/// The factors are copied out of UMFPACK so that many right-hand sides can be
/// pushed through the triangular solves together, followed by one sweep of
/// iterative refinement. Immutable once built; solve() may be called concurrently.
class Factorization {
 public:
  explicit Factorization(const SparseMatrix& a);
  Factorization(const Factorization&) = delete;
  Factorization& operator=(const Factorization&) = delete;

  int size() const { return n_; }

  std::vector<double> solve(const std::vector<double>& b) const;
  /// Solves every right-hand side against the one factorization. Each column is
  /// bitwise identical to a separate solve() call.
  std::vector<std::vector<double>> solve_multi(const std::vector<std::vector<double>>& b) const;

  /// Process-wide number of numeric factorizations performed so far.
  static long numeric_count();

 private:
  /// x = A^{-1} b for m interleaved columns (b[i * m + c]).
  void apply_inverse(const std::vector<double>& b, std::vector<double>& x, int m) const;

  int n_;
  // A in CSR form, for the refinement residual.
  std::vector<int> ap_;
  std::vector<int> ai_;
  std::vector<double> ax_;
  // P R A^T Q = L U with unit-diagonal L (strict part, rows) and U (strict part, columns).
  std::vector<int> p_, q_;
  std::vector<double> row_scale_;
  std::vector<int> lp_, lj_;
  std::vector<double> lx_;
  std::vector<int> up_, ui_;
  std::vector<double> ux_, diag_;
};

std::shared_ptr<const Factorization> factorize(const SparseMatrix& a);

}  // namespace mhduq::linalg
