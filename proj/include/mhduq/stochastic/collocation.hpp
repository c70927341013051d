#pragma once

#include <vector>

namespace mhduq::stochastic {

/// One-dimensional quadrature rule on [-1, 1].
struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nested Clenshaw-Curtis size: m(0) = 1, m(l) = 2^l + 1.
int clenshaw_curtis_size(int level);

/// Clenshaw-Curtis rule with nodes cos(pi k / (m - 1)); weights sum to 2.
Rule1d clenshaw_curtis_1d(int level);

/// Sparse grid on [-1, 1]^d with weights normalized against the uniform density
/// (they sum to 1 and may be negative).
struct SparseGrid {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Smolyak combination of nested Clenshaw-Curtis rules,
///   A(L, d) = sum_{L-d+1 <= |l| <= L} (-1)^(L-|l|) C(d-1, L-|l|) (U^l1 x ... x U^ld),
/// with 0-based levels l_k. Coinciding points are merged and their weights summed.
SparseGrid smolyak_grid(int dimension, int level);

}  // namespace mhduq::stochastic
