#include "mhduq/linalg/factorization.hpp"

#include <umfpack.h>

#include <atomic>
#include <string>

#include "mhduq/common/types.hpp"

namespace mhduq::linalg {

namespace {
std::atomic<long> g_numeric_count{0};

/// Owns a Numeric object for the duration of factor extraction.
struct NumericHandle {
  void* p = nullptr;
  ~NumericHandle() {
    if (p) umfpack_di_free_numeric(&p);
  }
};
}  // namespace

// UMFPACK expects compressed columns. The CSR arrays of A are the CSC arrays of
// A^T, so we factor A^T and solve with the transposed factors.
Factorization::Factorization(const SparseMatrix& a)
    : n_(a.rows()), ap_(a.row_ptr()), ai_(a.col_idx()), ax_(a.values()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("factorize: matrix must be square");
  double control[UMFPACK_CONTROL];
  umfpack_di_defaults(control);
  void* symbolic = nullptr;
  int status = umfpack_di_symbolic(n_, n_, ap_.data(), ai_.data(), ax_.data(), &symbolic, control, nullptr);
  if (status != UMFPACK_OK) {
    umfpack_di_free_symbolic(&symbolic);
    throw SingularMatrix("UMFPACK symbolic analysis failed (status " + std::to_string(status) + ")");
  }
  NumericHandle numeric;
  status = umfpack_di_numeric(ap_.data(), ai_.data(), ax_.data(), symbolic, &numeric.p, control, nullptr);
  umfpack_di_free_symbolic(&symbolic);
  ++g_numeric_count;
  if (status != UMFPACK_OK)
    throw SingularMatrix("UMFPACK numeric factorization failed (status " + std::to_string(status) + ")");

  int lnz = 0, unz = 0, nr = 0, nc = 0, nz_udiag = 0;
  umfpack_di_get_lunz(&lnz, &unz, &nr, &nc, &nz_udiag, numeric.p);
  std::vector<int> lp(n_ + 1), lj(lnz), up(n_ + 1), ui(unz);
  std::vector<double> lx(lnz), ux(unz);
  p_.resize(n_);
  q_.resize(n_);
  diag_.resize(n_);
  row_scale_.resize(n_);
  int do_recip = 0;
  status = umfpack_di_get_numeric(lp.data(), lj.data(), lx.data(), up.data(), ui.data(), ux.data(), p_.data(),
                                  q_.data(), diag_.data(), &do_recip, row_scale_.data(), numeric.p);
  if (status != UMFPACK_OK) throw SingularMatrix("UMFPACK factor extraction failed (status " + std::to_string(status) + ")");
  if (!do_recip)
    for (double& r : row_scale_) r = 1.0 / r;

  // Drop the diagonals; L has a unit diagonal and U's is kept in diag_.
  auto strip = [this](const std::vector<int>& ptr, const std::vector<int>& idx, const std::vector<double>& val,
                      std::vector<int>& out_ptr, std::vector<int>& out_idx, std::vector<double>& out_val) {
    out_ptr.assign(n_ + 1, 0);
    out_idx.reserve(idx.size());
    out_val.reserve(val.size());
    for (int k = 0; k < n_; ++k) {
      for (int p = ptr[k]; p < ptr[k + 1]; ++p)
        if (idx[p] != k) {
          out_idx.push_back(idx[p]);
          out_val.push_back(val[p]);
        }
      out_ptr[k + 1] = static_cast<int>(out_idx.size());
    }
  };
  strip(lp, lj, lx, lp_, lj_, lx_);
  strip(up, ui, ux, up_, ui_, ux_);
}

// A = Q U^T L^T P R^{-1}, so x = R P^T L^{-T} U^{-T} Q^T b.
void Factorization::apply_inverse(const std::vector<double>& b, std::vector<double>& x, int m) const {
  std::vector<double> z(static_cast<std::size_t>(n_) * m);
  for (int k = 0; k < n_; ++k) {
    double* zk = &z[static_cast<std::size_t>(k) * m];
    const double* bk = &b[static_cast<std::size_t>(q_[k]) * m];
    for (int c = 0; c < m; ++c) zk[c] = bk[c];
    for (int p = up_[k]; p < up_[k + 1]; ++p) {
      const double u = ux_[p];
      const double* zi = &z[static_cast<std::size_t>(ui_[p]) * m];
      for (int c = 0; c < m; ++c) zk[c] -= u * zi[c];
    }
    const double d = diag_[k];
    for (int c = 0; c < m; ++c) zk[c] /= d;
  }
  for (int k = n_ - 1; k >= 0; --k) {
    const double* zk = &z[static_cast<std::size_t>(k) * m];
    for (int p = lp_[k]; p < lp_[k + 1]; ++p) {
      const double l = lx_[p];
      double* zj = &z[static_cast<std::size_t>(lj_[p]) * m];
      for (int c = 0; c < m; ++c) zj[c] -= l * zk[c];
    }
  }
  x.resize(z.size());
  for (int k = 0; k < n_; ++k) {
    const int i = p_[k];
    const double r = row_scale_[i];
    for (int c = 0; c < m; ++c) x[static_cast<std::size_t>(i) * m + c] = r * z[static_cast<std::size_t>(k) * m + c];
  }
}

std::vector<double> Factorization::solve(const std::vector<double>& b) const {
  return solve_multi({b})[0];
}

std::vector<std::vector<double>> Factorization::solve_multi(const std::vector<std::vector<double>>& b) const {
  const int m = static_cast<int>(b.size());
  if (m == 0) return {};
  for (const auto& col : b)
    if (static_cast<int>(col.size()) != n_) throw std::invalid_argument("solve: rhs length mismatch");
  std::vector<double> rhs(static_cast<std::size_t>(n_) * m);
  for (int i = 0; i < n_; ++i)
    for (int c = 0; c < m; ++c) rhs[static_cast<std::size_t>(i) * m + c] = b[c][i];

  std::vector<double> x, dx;
  apply_inverse(rhs, x, m);
  // One refinement sweep on r = b - A x.
  std::vector<double> r(rhs.size());
  for (int i = 0; i < n_; ++i) {
    double* ri = &r[static_cast<std::size_t>(i) * m];
    for (int c = 0; c < m; ++c) ri[c] = rhs[static_cast<std::size_t>(i) * m + c];
    for (int p = ap_[i]; p < ap_[i + 1]; ++p) {
      const double a = ax_[p];
      const double* xj = &x[static_cast<std::size_t>(ai_[p]) * m];
      for (int c = 0; c < m; ++c) ri[c] -= a * xj[c];
    }
  }
  apply_inverse(r, dx, m);

  std::vector<std::vector<double>> out(m, std::vector<double>(n_));
  for (int i = 0; i < n_; ++i)
    for (int c = 0; c < m; ++c) {
      const std::size_t k = static_cast<std::size_t>(i) * m + c;
      out[c][i] = x[k] + dx[k];
    }
  return out;
}

long Factorization::numeric_count() { return g_numeric_count.load(); }

std::shared_ptr<const Factorization> factorize(const SparseMatrix& a) {
  return std::make_shared<const Factorization>(a);
}

}  // namespace mhduq::linalg
