#include "mhduq/schemes/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "mhduq/elsasser/transform.hpp"

namespace mhduq::schemes {

bool Problem::normal_covers_boundary() const {
  for (const auto& e : mesh->boundary_edges())
    if (!mesh::tag_matches(e.tag, normal_tag)) return false;
  return true;
}

namespace {

VectorFunction constant_field(Vec2 value) {
  return [value](double, const Point&) { return value; };
}

/// Elsasser pair (v, w) of primitive data (u, B) given as a single callable.
std::pair<VectorFunction, VectorFunction> elsasser_pair(std::function<std::pair<Vec2, Vec2>(const Point&)> ub,
                                                        double s) {
  VectorFunction v = [ub, s](double, const Point& x) {
    const auto [u, b] = ub(x);
    return elsasser::to_elsasser(u, b, s).first;
  };
  VectorFunction w = [ub, s](double, const Point& x) {
    const auto [u, b] = ub(x);
    return elsasser::to_elsasser(u, b, s).second;
  };
  return {std::move(v), std::move(w)};
}

void check_plan(const stochastic::StochasticPlan& plan) {
  if (plan.size() == 0) throw std::invalid_argument("stochastic plan is empty");
  if (static_cast<int>(plan.k.size()) != plan.size()) throw std::invalid_argument("plan has no k_j per realization");
}

}  // namespace

Problem make_mms_problem(std::shared_ptr<const mesh::TriMesh> mesh, const stochastic::StochasticPlan& plan, double s) {
  check_plan(plan);
  if (static_cast<int>(plan.nu.size()) != plan.size())
    throw std::invalid_argument("manufactured problem needs constant nu_j, nu_m,j");
  Problem p;
  p.name = "mms";
  p.mesh = std::move(mesh);
  p.s = s;
  for (int j = 0; j < plan.size(); ++j) {
    elsasser::MmsSolution m(plan.k[j], plan.epsilon, plan.nu[j], plan.nu_m[j]);
    RealizationData d;
    d.v0 = m.v_function();
    d.w0 = m.w_function();
    d.f1 = m.f1_function();
    d.f2 = m.f2_function();
    d.v_bc = m.v_function();
    d.w_bc = m.w_function();
    p.realizations.push_back(std::move(d));
    p.exact.push_back(m);
  }
  return p;
}

Problem make_channel_problem(std::shared_ptr<const mesh::TriMesh> mesh, const stochastic::StochasticPlan& plan,
                             double s) {
  check_plan(plan);
  Problem p;
  p.name = "channel";
  p.mesh = std::move(mesh);
  p.s = s;
  p.normal_tag = mesh::BoundaryTag::wall;
  for (int j = 0; j < plan.size(); ++j) {
    const double a = plan.amplitude(j);
    auto profile = [a](const Point& x) { return Vec2{a * x.y * (10.0 - x.y) / 25.0, 0.0}; };
    // Inflow and outflow carry the parabola with B = (0,1); the no-slip walls carry B = a (0,1).
    auto boundary = [a, profile](const Point& x) -> std::pair<Vec2, Vec2> {
      const double tol = 1e-9;
      if (x.x < tol || x.x > 40.0 - tol) return {profile(x), Vec2{0.0, 1.0}};
      return {Vec2{0.0, 0.0}, Vec2{0.0, a}};
    };
    auto initial = [profile](const Point& x) -> std::pair<Vec2, Vec2> { return {profile(x), Vec2{0.0, 0.0}}; };
    RealizationData d;
    std::tie(d.v0, d.w0) = elsasser_pair(initial, s);
    std::tie(d.v_bc, d.w_bc) = elsasser_pair(boundary, s);
    p.realizations.push_back(std::move(d));
  }
  return p;
}

Problem make_cavity_problem(std::shared_ptr<const mesh::TriMesh> mesh, const stochastic::StochasticPlan& plan,
                            double s) {
  check_plan(plan);
  Problem p;
  p.name = "cavity";
  p.mesh = std::move(mesh);
  p.s = s;
  for (int j = 0; j < plan.size(); ++j) {
    const double a = plan.amplitude(j);
    auto boundary = [a](const Point& x) -> std::pair<Vec2, Vec2> {
      const Vec2 b{0.0, a};
      if (x.y > 1.0 - 1e-9) {
        const double c = 1.0 - x.x * x.x;
        return {Vec2{a * c * c, 0.0}, b};
      }
      return {Vec2{0.0, 0.0}, b};
    };
    RealizationData d;
    d.v0 = constant_field({0.0, 0.0});
    d.w0 = constant_field({0.0, 0.0});
    std::tie(d.v_bc, d.w_bc) = elsasser_pair(boundary, s);
    p.realizations.push_back(std::move(d));
  }
  return p;
}

Problem make_homogeneous_problem(std::shared_ptr<const mesh::TriMesh> mesh, std::vector<VectorFunction> v0,
                                 std::vector<VectorFunction> w0, double s) {
  if (v0.size() != w0.size() || v0.empty()) throw std::invalid_argument("need matching non-empty initial data");
  Problem p;
  p.name = "homogeneous";
  p.mesh = std::move(mesh);
  p.s = s;
  for (std::size_t j = 0; j < v0.size(); ++j) {
    RealizationData d;
    d.v0 = v0[j];
    d.w0 = w0[j];
    d.v_bc = constant_field({0.0, 0.0});
    d.w_bc = constant_field({0.0, 0.0});
    p.realizations.push_back(std::move(d));
  }
  return p;
}

}  // namespace mhduq::schemes
