#include "mhduq/linalg/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mhduq::linalg {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (static_cast<int>(row_ptr_.size()) != rows_ + 1 || col_idx_.size() != values_.size() ||
      row_ptr_.back() != static_cast<int>(values_.size())) {
    throw std::invalid_argument("inconsistent CSR arrays");
  }
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (col_idx_[k] < 0 || col_idx_[k] >= cols_) throw std::invalid_argument("CSR column out of range");
      if (k > row_ptr_[r] && col_idx_[k] <= col_idx_[k - 1]) {
        throw std::invalid_argument("CSR columns must be sorted and unique");
      }
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> row_ptr(rows + 1, 0);
  std::vector<int> col_idx;
  std::vector<double> values;
  col_idx.reserve(triplets.size());
  values.reserve(triplets.size());
  int last_row = -1, last_col = -1;
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::invalid_argument("triplet index out of range");
    }
    if (t.row == last_row && t.col == last_col) {
      values.back() += t.value;
      continue;
    }
    col_idx.push_back(t.col);
    values.push_back(t.value);
    ++row_ptr[t.row + 1];
    last_row = t.row;
    last_col = t.col;
  }
  for (int r = 0; r < rows; ++r) row_ptr[r + 1] += row_ptr[r];
  return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<int> row_ptr(n + 1), col_idx(n);
  for (int i = 0; i <= n; ++i) row_ptr[i] = i;
  for (int i = 0; i < n; ++i) col_idx[i] = i;
  return SparseMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::vector<double>(n, 1.0));
}

int SparseMatrix::find(int r, int c) const {
  const auto begin = col_idx_.begin() + row_ptr_[r];
  const auto end = col_idx_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return -1;
  return static_cast<int>(it - col_idx_.begin());
}

double SparseMatrix::coeff(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : values_[k];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_) {
    throw std::invalid_argument("multiply: shape mismatch");
  }
  for (int r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += values_[k] * x[col_idx_[k]];
    y[r] = sum;
  }
}

std::vector<double> SparseMatrix::operator*(const std::vector<double>& x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<int> row_ptr(cols_ + 1, 0);
  for (int c : col_idx_) ++row_ptr[c + 1];
  for (int c = 0; c < cols_; ++c) row_ptr[c + 1] += row_ptr[c];
  std::vector<int> next(row_ptr.begin(), row_ptr.end() - 1);
  std::vector<int> col_idx(values_.size());
  std::vector<double> values(values_.size());
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const int dst = next[col_idx_[k]]++;
      col_idx[dst] = r;
      values[dst] = values_[k];
    }
  }
  return SparseMatrix(cols_, rows_, std::move(row_ptr), std::move(col_idx), std::move(values));
}

void SparseMatrix::scale(double s) {
  for (double& v : values_) v *= s;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && row_ptr_ == other.row_ptr_ &&
         col_idx_ == other.col_idx_;
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> d(rows_, std::vector<double>(cols_, 0.0));
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d[r][col_idx_[k]] = values_[k];
  }
  return d;
}

void SparseMatrix::write_coordinate(std::ostream& out) const {
  out << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
  const auto old = out.precision(17);
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out << r << ' ' << col_idx_[k] << ' ' << values_[k] << '\n';
  }
  out.precision(old);
}

SparseMatrix block_matrix(const std::vector<std::vector<Block>>& blocks, const std::vector<int>& row_sizes,
                          const std::vector<int>& col_sizes, bool explicit_diagonal) {
  const std::size_t nbr = row_sizes.size(), nbc = col_sizes.size();
  if (blocks.size() != nbr) throw std::invalid_argument("block_matrix: row block count mismatch");
  std::vector<int> row_off(nbr + 1, 0), col_off(nbc + 1, 0);
  for (std::size_t i = 0; i < nbr; ++i) row_off[i + 1] = row_off[i] + row_sizes[i];
  for (std::size_t j = 0; j < nbc; ++j) col_off[j + 1] = col_off[j] + col_sizes[j];
  const int n_rows = row_off[nbr], n_cols = col_off[nbc];

  for (std::size_t i = 0; i < nbr; ++i) {
    if (blocks[i].size() != nbc) throw std::invalid_argument("block_matrix: column block count mismatch");
    for (std::size_t j = 0; j < nbc; ++j) {
      const SparseMatrix* m = blocks[i][j].matrix;
      if (m && (m->rows() != row_sizes[i] || m->cols() != col_sizes[j])) {
        throw std::invalid_argument("block_matrix: block shape mismatch");
      }
    }
  }

  // Row-by-row merge; blocks of one block row have disjoint, ordered column ranges.
  std::vector<int> row_ptr(n_rows + 1, 0);
  std::vector<int> col_idx;
  std::vector<double> values;
  for (std::size_t bi = 0; bi < nbr; ++bi) {
    for (int lr = 0; lr < row_sizes[bi]; ++lr) {
      const int r = row_off[bi] + lr;
      bool diag_done = !explicit_diagonal || r >= n_cols;
      for (std::size_t bj = 0; bj < nbc; ++bj) {
        const SparseMatrix* m = blocks[bi][bj].matrix;
        const double f = blocks[bi][bj].factor;
        if (!diag_done && r < col_off[bj]) {
          col_idx.push_back(r);
          values.push_back(0.0);
          diag_done = true;
        }
        if (m) {
          for (int k = m->row_ptr()[lr]; k < m->row_ptr()[lr + 1]; ++k) {
            const int c = col_off[bj] + m->col_idx()[k];
            if (!diag_done && c >= r) {
              if (c > r) {
                col_idx.push_back(r);
                values.push_back(0.0);
              }
              diag_done = true;
            }
            col_idx.push_back(c);
            values.push_back(f * m->values()[k]);
          }
        }
      }
      if (!diag_done) {
        col_idx.push_back(r);
        values.push_back(0.0);
      }
      row_ptr[r + 1] = static_cast<int>(col_idx.size());
    }
  }
  return SparseMatrix(n_rows, n_cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace mhduq::linalg
