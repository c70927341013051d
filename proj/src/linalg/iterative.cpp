#include "mhduq/linalg/iterative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mhduq/common/types.hpp"

namespace mhduq::linalg {

KrylovMethod parse_krylov_method(std::string_view name) {
  if (name == "cg") return KrylovMethod::cg;
  if (name == "gmres") return KrylovMethod::gmres;
  throw std::invalid_argument("unknown Krylov method '" + std::string(name) + "'");
}

PreconditionerKind parse_preconditioner(std::string_view name) {
  if (name == "none") return PreconditionerKind::none;
  if (name == "jacobi") return PreconditionerKind::jacobi;
  if (name == "ilu0") return PreconditionerKind::ilu0;
  throw std::invalid_argument("unknown preconditioner '" + std::string(name) + "'");
}

namespace {

// ============================================================================
// Preconditioners
// ============================================================================

class Preconditioner {
 public:
  Preconditioner(const SparseMatrix& a, PreconditionerKind kind) : a_(a), kind_(kind) {
    const int n = a.rows();
    if (kind == PreconditionerKind::jacobi) {
      inv_diag_.assign(n, 1.0);
      for (int i = 0; i < n; ++i) {
        const double d = a.coeff(i, i);
        if (d == 0.0) throw SingularMatrix("Jacobi preconditioner: zero diagonal in row " + std::to_string(i));
        inv_diag_[i] = 1.0 / d;
      }
    } else if (kind == PreconditionerKind::ilu0) {
      build_ilu0();
    }
  }

  void apply(const std::vector<double>& r, std::vector<double>& z) const {
    const int n = a_.rows();
    z.resize(n);
    switch (kind_) {
      case PreconditionerKind::none: z = r; return;
      case PreconditionerKind::jacobi:
        for (int i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
        return;
      case PreconditionerKind::ilu0: {
        const auto& rp = a_.row_ptr();
        const auto& ci = a_.col_idx();
        for (int i = 0; i < n; ++i) {
          double s = r[i];
          for (int k = rp[i]; k < diag_[i]; ++k) s -= lu_[k] * z[ci[k]];
          z[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
          double s = z[i];
          for (int k = diag_[i] + 1; k < rp[i + 1]; ++k) s -= lu_[k] * z[ci[k]];
          z[i] = s / lu_[diag_[i]];
        }
        return;
      }
    }
  }

 private:
  void build_ilu0() {
    const int n = a_.rows();
    const auto& rp = a_.row_ptr();
    const auto& ci = a_.col_idx();
    lu_ = a_.values();
    diag_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      diag_[i] = a_.find(i, i);
      if (diag_[i] < 0) throw SingularMatrix("ILU(0): missing diagonal in row " + std::to_string(i));
    }
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
      for (int k = rp[i]; k < rp[i + 1]; ++k) pos[ci[k]] = k;
      for (int k = rp[i]; k < rp[i + 1] && ci[k] < i; ++k) {
        const int j = ci[k];
        const double pivot = lu_[diag_[j]];
        if (pivot == 0.0) throw SingularMatrix("ILU(0): zero pivot in row " + std::to_string(j));
        lu_[k] /= pivot;
        for (int m = diag_[j] + 1; m < rp[j + 1]; ++m) {
          const int p = pos[ci[m]];
          if (p >= 0) lu_[p] -= lu_[k] * lu_[m];
        }
      }
      for (int k = rp[i]; k < rp[i + 1]; ++k) pos[ci[k]] = -1;
      if (lu_[diag_[i]] == 0.0) throw SingularMatrix("ILU(0): zero pivot in row " + std::to_string(i));
    }
  }

  const SparseMatrix& a_;
  PreconditionerKind kind_;
  std::vector<double> inv_diag_;
  std::vector<double> lu_;
  std::vector<int> diag_;
};

// ============================================================================
// Krylov loops
// ============================================================================

double residual_norm(const SparseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
  std::vector<double> r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r);
}

int pcg(const SparseMatrix& a, const Preconditioner& m, const std::vector<double>& b, std::vector<double>& x,
        const IterativeOptions& opt, double bnorm) {
  const int n = a.rows();
  std::vector<double> r = b, z, p, q(n);
  m.apply(r, z);
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= opt.max_iterations; ++it) {
    a.multiply(p, q);
    const double pq = dot(p, q);
    if (pq <= 0.0) throw NonConvergence("CG breakdown: matrix not positive definite", norm2(r) / bnorm, it);
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    if (norm2(r) <= opt.tol * bnorm) return it;
    m.apply(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw NonConvergence("CG did not converge", residual_norm(a, x, b) / bnorm, opt.max_iterations);
}

// Right-preconditioned restarted GMRES, so the monitored residual is the true one.
int gmres(const SparseMatrix& a, const Preconditioner& m, const std::vector<double>& b, std::vector<double>& x,
          const IterativeOptions& opt, double bnorm) {
  const int n = a.rows();
  const int kdim = std::max(1, opt.restart);
  std::vector<std::vector<double>> v(kdim + 1, std::vector<double>(n));
  std::vector<std::vector<double>> h(kdim + 1, std::vector<double>(kdim, 0.0));
  std::vector<double> cs(kdim), sn(kdim), g(kdim + 1), z(n), w(n);
  int total = 0;
  double best = 1.0;
  while (total < opt.max_iterations) {
    std::vector<double> r = a * x;
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = norm2(r);
    best = std::min(best, beta / bnorm);
    if (beta <= opt.tol * bnorm) return total;
    for (int i = 0; i < n; ++i) v[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int k = 0;
    for (; k < kdim && total < opt.max_iterations; ++k) {
      ++total;
      m.apply(v[k], z);
      a.multiply(z, w);
      for (int j = 0; j <= k; ++j) {
        h[j][k] = dot(w, v[j]);
        for (int i = 0; i < n; ++i) w[i] -= h[j][k] * v[j][i];
      }
      h[k + 1][k] = norm2(w);
      if (h[k + 1][k] != 0.0) {
        for (int i = 0; i < n; ++i) v[k + 1][i] = w[i] / h[k + 1][k];
      }
      for (int j = 0; j < k; ++j) {
        const double t = cs[j] * h[j][k] + sn[j] * h[j + 1][k];
        h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
        h[j][k] = t;
      }
      const double den = std::hypot(h[k][k], h[k + 1][k]);
      cs[k] = den == 0.0 ? 1.0 : h[k][k] / den;
      sn[k] = den == 0.0 ? 0.0 : h[k + 1][k] / den;
      h[k][k] = den;
      h[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      best = std::min(best, std::abs(g[k + 1]) / bnorm);
      if (std::abs(g[k + 1]) <= opt.tol * bnorm) {
        ++k;
        break;
      }
    }
    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h[i][j] * y[j];
      y[i] = s / h[i][i];
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < n; ++i) w[i] += y[j] * v[j][i];
    }
    m.apply(w, z);
    for (int i = 0; i < n; ++i) x[i] += z[i];
  }
  const double final_res = residual_norm(a, x, b) / bnorm;
  if (final_res <= opt.tol) return total;
  throw NonConvergence("GMRES did not converge", std::min(best, final_res), total);
}

}  // namespace

IterativeResult solve_iterative(const SparseMatrix& a, const std::vector<std::vector<double>>& b,
                                const IterativeOptions& options) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve_iterative: matrix must be square");
  const Preconditioner m(a, options.preconditioner);
  IterativeResult result;
  for (const auto& rhs : b) {
    if (static_cast<int>(rhs.size()) != a.rows()) throw std::invalid_argument("solve_iterative: rhs length mismatch");
    std::vector<double> x(rhs.size(), 0.0);
    const double bnorm = norm2(rhs);
    int iterations = 0;
    if (bnorm > 0.0) {
      iterations = options.method == KrylovMethod::cg ? pcg(a, m, rhs, x, options, bnorm)
                                                      : gmres(a, m, rhs, x, options, bnorm);
    }
    result.relative_residuals.push_back(bnorm > 0.0 ? residual_norm(a, x, rhs) / bnorm : 0.0);
    result.iterations.push_back(iterations);
    result.solutions.push_back(std::move(x));
  }
  return result;
}

}  // namespace mhduq::linalg
