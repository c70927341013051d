#include "mhduq/fem/assembly.hpp"

#include <algorithm>

namespace mhduq::fem {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_mesh(const FeSpace& a, const FeSpace& b) {
  if (!a.same_mesh(b)) throw std::invalid_argument("trial and test spaces live on different meshes");
}

}  // namespace

// ============================================================================
// Generic operator assembly
// ============================================================================

linalg::SparseMatrix assemble_operator(const OperatorKind& kind, const FeSpace& trial, const FeSpace& test,
                                       int degree) {
  require_same_mesh(trial, test);
  const auto& mesh = trial.mesh();
  const QuadratureRule rule = triangle_rule(degree);
  const BasisTable trial_tab(trial.family(), rule);
  const BasisTable test_tab(test.family(), rule);
  const int nq = rule.size();
  const int nlu = trial_tab.n_local(), nlv = test_tab.n_local();
  const int cu = trial.components(), cv = test.components();

  const bool is_div = std::holds_alternative<Divergence>(kind);
  const bool vector_only = std::holds_alternative<GradDiv>(kind) || std::holds_alternative<Convection>(kind);
  if (is_div) {
    if (cu != 2 || cv != 1) throw std::invalid_argument("divergence needs a vector trial and scalar test space");
  } else {
    if (cu != cv) throw std::invalid_argument("operator needs matching trial/test components");
    if (vector_only && cu != 2) throw std::invalid_argument("operator needs vector spaces");
  }

  std::vector<Vec2> wind_q;
  if (const auto* c = std::get_if<Convection>(&kind)) {
    if (!c->wind.space || c->wind.space->components() != 2) throw std::invalid_argument("convection wind must have 2 components");
    require_same_mesh(*c->wind.space, trial);
    wind_q = eval_vector(c->wind, rule);
  }

  const int nrow_loc = cv * nlv, ncol_loc = cu * nlu;
  std::vector<double> local(static_cast<std::size_t>(nrow_loc) * ncol_loc);
  std::vector<linalg::Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * nrow_loc * ncol_loc);
  Vec2 gu[6], gv[6];

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    std::fill(local.begin(), local.end(), 0.0);
    auto at = [&](int a, int i, int b, int j) -> double& { return local[(a * nlv + i) * ncol_loc + b * nlu + j]; };
    for (int q = 0; q < nq; ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area;
      const Point x = geo.map(rule.points[q]);
      const double* pu = trial_tab.values(q);
      const double* pv = test_tab.values(q);
      trial_tab.gradients(q, geo, gu);
      test_tab.gradients(q, geo, gv);
      std::visit(Overloaded{
                     [&](const Mass&) {
                       for (int a = 0; a < cv; ++a)
                         for (int i = 0; i < nlv; ++i)
                           for (int j = 0; j < nlu; ++j) at(a, i, a, j) += w * pu[j] * pv[i];
                     },
                     [&](const Stiffness& s) {
                       const double k = w * s.kappa.at(t, q, x);
                       for (int a = 0; a < cv; ++a)
                         for (int i = 0; i < nlv; ++i)
                           for (int j = 0; j < nlu; ++j) at(a, i, a, j) += k * dot(gu[j], gv[i]);
                     },
                     [&](const EddyViscosity& e) {
                       const double k = w * 2.0 * e.scale * e.l_sq.at(t, q, x);
                       for (int a = 0; a < cv; ++a)
                         for (int i = 0; i < nlv; ++i)
                           for (int j = 0; j < nlu; ++j) at(a, i, a, j) += k * dot(gu[j], gv[i]);
                     },
                     [&](const GradDiv&) {
                       for (int a = 0; a < 2; ++a)
                         for (int i = 0; i < nlv; ++i)
                           for (int b = 0; b < 2; ++b)
                             for (int j = 0; j < nlu; ++j) at(a, i, b, j) += w * gu[j][b] * gv[i][a];
                     },
                     [&](const Convection&) {
                       const Vec2& wq = wind_q[t * nq + q];
                       for (int a = 0; a < 2; ++a)
                         for (int i = 0; i < nlv; ++i)
                           for (int j = 0; j < nlu; ++j) at(a, i, a, j) += w * dot(wq, gu[j]) * pv[i];
                     },
                     [&](const Divergence&) {
                       for (int i = 0; i < nlv; ++i)
                         for (int b = 0; b < 2; ++b)
                           for (int j = 0; j < nlu; ++j) at(0, i, b, j) += w * gu[j][b] * pv[i];
                     },
                 },
                 kind);
    }
    const auto du = trial.element_dofs(t);
    const auto dv = test.element_dofs(t);
    for (int a = 0; a < cv; ++a)
      for (int i = 0; i < nlv; ++i)
        for (int b = 0; b < cu; ++b)
          for (int j = 0; j < nlu; ++j) {
            triplets.push_back({test.dof(a, dv[i]), trial.dof(b, du[j]), at(a, i, b, j)});
          }
  }
  return linalg::SparseMatrix::from_triplets(test.n_dofs(), trial.n_dofs(), std::move(triplets));
}

// ============================================================================
// Fused momentum assembler
// ============================================================================

MomentumAssembler::MomentumAssembler(SpacePtr space, int degree)
    : space_(std::move(space)), table_(space_->family(), triangle_rule(degree)) {
  if (space_->components() != 2) throw std::invalid_argument("MomentumAssembler needs a vector space");
  const int nl = table_.n_local(), ne = 2 * nl;
  const int nt = space_->mesh().n_triangles();
  std::vector<linalg::Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(nt) * ne * ne);
  std::vector<int> gdof(ne);
  for (int t = 0; t < nt; ++t) {
    const auto d = space_->element_dofs(t);
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < nl; ++i) gdof[a * nl + i] = space_->dof(a, d[i]);
    for (int r = 0; r < ne; ++r)
      for (int c = 0; c < ne; ++c) triplets.push_back({gdof[r], gdof[c], 0.0});
  }
  pattern_ = linalg::SparseMatrix::from_triplets(space_->n_dofs(), space_->n_dofs(), std::move(triplets));
  scatter_.resize(static_cast<std::size_t>(nt) * ne * ne);
  for (int t = 0; t < nt; ++t) {
    const auto d = space_->element_dofs(t);
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < nl; ++i) gdof[a * nl + i] = space_->dof(a, d[i]);
    for (int r = 0; r < ne; ++r)
      for (int c = 0; c < ne; ++c) scatter_[(static_cast<std::size_t>(t) * ne + r) * ne + c] = pattern_.find(gdof[r], gdof[c]);
  }
}

linalg::SparseMatrix MomentumAssembler::assemble(const MomentumTerms& terms) const {
  const auto& mesh = space_->mesh();
  const QuadratureRule& rule = table_.rule();
  const int nq = rule.size(), nl = table_.n_local(), ne = 2 * nl;
  const std::size_t nsamples = static_cast<std::size_t>(mesh.n_triangles()) * nq;
  if (terms.diffusion_field && terms.diffusion_field->size() != nsamples) {
    throw std::invalid_argument("diffusion field sampled on a different rule");
  }
  if (terms.wind && terms.wind->size() != nsamples) throw std::invalid_argument("wind sampled on a different rule");

  linalg::SparseMatrix a = pattern_;
  auto& values = a.values();
  std::vector<double> lap(nl * nl), conv(nl * nl), gd(ne * ne);
  Vec2 g[6];
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    std::fill(lap.begin(), lap.end(), 0.0);
    std::fill(conv.begin(), conv.end(), 0.0);
    std::fill(gd.begin(), gd.end(), 0.0);
    for (int q = 0; q < nq; ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area;
      const double* phi = table_.values(q);
      table_.gradients(q, geo, g);
      double kappa = terms.diffusion;
      if (terms.diffusion_field) kappa += (*terms.diffusion_field)[t * nq + q];
      Vec2 wind{0.0, 0.0};
      if (terms.wind) wind = (*terms.wind)[t * nq + q];
      for (int i = 0; i < nl; ++i) {
        for (int j = 0; j < nl; ++j) {
          lap[i * nl + j] += w * (terms.mass * phi[i] * phi[j] + kappa * dot(g[i], g[j]));
          if (terms.wind) conv[i * nl + j] += w * dot(wind, g[j]) * phi[i];
        }
      }
      if (terms.graddiv != 0.0) {
        for (int a2 = 0; a2 < 2; ++a2)
          for (int i = 0; i < nl; ++i)
            for (int b = 0; b < 2; ++b)
              for (int j = 0; j < nl; ++j) gd[(a2 * nl + i) * ne + b * nl + j] += w * terms.graddiv * g[i][a2] * g[j][b];
      }
    }
    const int* sc = scatter_.data() + static_cast<std::size_t>(t) * ne * ne;
    for (int r = 0; r < ne; ++r) {
      const int a2 = r / nl, i = r % nl;
      for (int c = 0; c < ne; ++c) {
        const int b = c / nl, j = c % nl;
        double v = gd[r * ne + c];
        if (a2 == b) v += lap[i * nl + j] + conv[i * nl + j];
        values[sc[r * ne + c]] += v;
      }
    }
  }
  return a;
}

// ============================================================================
// Linear forms
// ============================================================================

std::vector<double> assemble_linear_form(const FeSpace& test, const QuadratureRule& rule, const std::vector<Vec2>& f,
                                         const std::vector<Mat2>* big_f) {
  if (test.components() != 2) throw std::invalid_argument("assemble_linear_form needs a vector space");
  const auto& mesh = test.mesh();
  const BasisTable table(test.family(), rule);
  const int nq = rule.size(), nl = table.n_local();
  const std::size_t nsamples = static_cast<std::size_t>(mesh.n_triangles()) * nq;
  if (f.size() != nsamples || (big_f && big_f->size() != nsamples)) {
    throw std::invalid_argument("linear form data sampled on a different rule");
  }
  std::vector<double> b(test.n_dofs(), 0.0);
  Vec2 g[6];
  double loc0[6], loc1[6];
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    std::fill(loc0, loc0 + nl, 0.0);
    std::fill(loc1, loc1 + nl, 0.0);
    for (int q = 0; q < nq; ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area;
      const double* phi = table.values(q);
      const Vec2& fq = f[t * nq + q];
      for (int i = 0; i < nl; ++i) {
        loc0[i] += w * fq[0] * phi[i];
        loc1[i] += w * fq[1] * phi[i];
      }
      if (big_f) {
        table.gradients(q, geo, g);
        const Mat2& F = (*big_f)[t * nq + q];
        for (int i = 0; i < nl; ++i) {
          loc0[i] += w * (F[0][0] * g[i][0] + F[0][1] * g[i][1]);
          loc1[i] += w * (F[1][0] * g[i][0] + F[1][1] * g[i][1]);
        }
      }
    }
    const auto d = test.element_dofs(t);
    for (int i = 0; i < nl; ++i) {
      b[test.dof(0, d[i])] += loc0[i];
      b[test.dof(1, d[i])] += loc1[i];
    }
  }
  return b;
}

std::vector<double> assemble_load(const VectorFunction& f, double t, const FeSpace& test, int degree) {
  const QuadratureRule rule = triangle_rule(degree);
  const auto pts = quadrature_points(test.mesh(), rule);
  std::vector<Vec2> fq(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) fq[k] = f(t, pts[k]);
  return assemble_linear_form(test, rule, fq);
}

std::vector<double> assemble_load(const ScalarFunction& g, double t, const FeSpace& test, int degree) {
  if (test.components() != 1) throw std::invalid_argument("scalar load needs a scalar space");
  const QuadratureRule rule = triangle_rule(degree);
  const BasisTable table(test.family(), rule);
  const int nq = rule.size(), nl = table.n_local();
  std::vector<double> b(test.n_dofs(), 0.0);
  for (int tri = 0; tri < test.mesh().n_triangles(); ++tri) {
    const ElementGeometry geo = element_geometry(test.mesh(), tri);
    const auto d = test.element_dofs(tri);
    for (int q = 0; q < nq; ++q) {
      const double w = rule.weights[q] * 2.0 * geo.area * g(t, geo.map(rule.points[q]));
      const double* phi = table.values(q);
      for (int i = 0; i < nl; ++i) b[d[i]] += w * phi[i];
    }
  }
  return b;
}

}  // namespace mhduq::fem
