#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace mhduq::linalg {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted and unique per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx,
               std::vector<double> values);

  /// Duplicate entries are summed.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Storage index of (r, c), or -1 when not in the pattern.
  int find(int r, int c) const;
  double coeff(int r, int c) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(const std::vector<double>& x) const;

  SparseMatrix transpose() const;
  void scale(double s);
  bool same_pattern(const SparseMatrix& other) const;

  /// Dense copy, row-major. Intended for tests on small matrices.
  std::vector<std::vector<double>> to_dense() const;

  /// Coordinate text dump: "rows cols nnz" header, then "i j value" lines (0-based).
  void write_coordinate(std::ostream& out) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// One block of a block matrix, scaled by `factor`. A null matrix is an empty block.
struct Block {
  const SparseMatrix* matrix = nullptr;
  double factor = 1.0;
};

/// Assembles a block matrix. Blocks in a row share a row count, blocks in a
/// column share a column count. When `explicit_diagonal` is set every diagonal
/// entry is stored (zero if absent) so rows can later be replaced by identity rows.
SparseMatrix block_matrix(const std::vector<std::vector<Block>>& blocks,
                          const std::vector<int>& row_sizes, const std::vector<int>& col_sizes,
                          bool explicit_diagonal = true);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace mhduq::linalg
