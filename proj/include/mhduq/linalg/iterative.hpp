#pragma once

#include <string_view>
#include <vector>

#include "mhduq/linalg/sparse_matrix.hpp"

namespace mhduq::linalg {

enum class KrylovMethod { cg, gmres };
enum class PreconditionerKind { none, jacobi, ilu0 };

KrylovMethod parse_krylov_method(std::string_view name);
PreconditionerKind parse_preconditioner(std::string_view name);

struct IterativeOptions {
  KrylovMethod method = KrylovMethod::gmres;
  PreconditionerKind preconditioner = PreconditionerKind::ilu0;
  double tol = 1e-10;  ///< relative residual ||b - Ax|| / ||b||
  int max_iterations = 2000;
  int restart = 60;  ///< GMRES restart length
};

struct IterativeResult {
  std::vector<std::vector<double>> solutions;
  std::vector<int> iterations;
  std::vector<double> relative_residuals;
};

/// Looped Krylov solve over a set of right-hand sides with one shared
/// preconditioner. Throws NonConvergence on the first rhs that misses `tol`.
IterativeResult solve_iterative(const SparseMatrix& a, const std::vector<std::vector<double>>& b,
                                const IterativeOptions& options);

}  // namespace mhduq::linalg
