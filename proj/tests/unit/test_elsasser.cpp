#include <doctest.h>

#include <cmath>

#include "mhduq/elsasser/mms.hpp"
#include "mhduq/elsasser/transform.hpp"
#include "mhduq/fem/norms.hpp"
#include "mhduq/mesh/generators.hpp"

using namespace mhduq;
using namespace mhduq::elsasser;

TEST_CASE("Elsasser transform round-trips") {
  for (double s : {1e-3, 0.5, 1.0, 4.0}) {
    const Vec2 u{0.3, -1.2}, b{2.0, 0.7};
    const auto [v, w] = to_elsasser(u, b, s);
    CHECK(v[0] == doctest::Approx(u[0] + std::sqrt(s) * b[0]));
    CHECK(w[1] == doctest::Approx(u[1] - std::sqrt(s) * b[1]));
    const auto [u2, b2] = from_elsasser(v, w, s);
    CHECK(u2[0] == doctest::Approx(u[0]));
    CHECK(u2[1] == doctest::Approx(u[1]));
    CHECK(b2[0] == doctest::Approx(b[0]));
    CHECK(b2[1] == doctest::Approx(b[1]));
  }
  CHECK_THROWS(CouplingParams(0.0));
  CHECK_THROWS(to_elsasser(Vec2{1, 0}, Vec2{0, 1}, -1.0));
}

TEST_CASE("finite element transform matches the pointwise one") {
  auto mesh = std::make_shared<const mesh::TriMesh>(mesh::generate_square(2));
  auto sp = std::make_shared<const fem::FeSpace>(mesh, fem::Family::P2, 2);
  const auto u = fem::interpolate(VectorFunction([](double, const Point& x) { return Vec2{x.x, x.y * x.y}; }), 0.0, sp);
  const auto b = fem::interpolate(VectorFunction([](double, const Point& x) { return Vec2{1.0, -x.x}; }), 0.0, sp);
  const auto [v, w] = to_elsasser(u, b, 0.25);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(v[i] == doctest::Approx(u[i] + 0.5 * b[i]));
    CHECK(w[i] == doctest::Approx(u[i] - 0.5 * b[i]));
  }
  const auto [u2, b2] = from_elsasser(v, w, 0.25);
  CHECK(fem::l2_norm(fem::linear_combination(1.0, u2, -1.0, u)) < 1e-14);
  CHECK(fem::l2_norm(fem::linear_combination(1.0, b2, -1.0, b)) < 1e-14);
}

TEST_CASE("forcing transform adds and subtracts the curl") {
  // g = x y^2 -> grad g = (y^2, 2 x y), curl = (2 x y, -y^2)
  const Vec2 grad_g{4.0, 4.0};  // at (1, 2)
  const auto [f1, f2] = forcing_transform(Vec2{1.0, 1.0}, grad_g, 4.0);
  CHECK(f1[0] == doctest::Approx(1.0 + 2.0 * 4.0));
  CHECK(f1[1] == doctest::Approx(1.0 - 2.0 * 4.0));
  CHECK(f2[0] == doctest::Approx(1.0 - 2.0 * 4.0));
}

TEST_CASE("manufactured fields are divergence free and scale with the amplitude") {
  const MmsSolution m(-2.0, 0.05, 0.01, 0.001);
  CHECK(m.amplitude() == doctest::Approx(0.9));
  for (double t : {0.0, 0.7})
    for (Point x : {Point{0.1, 0.2}, Point{0.8, 0.4}}) {
      const Mat2 gv = m.grad_v(t, x), gw = m.grad_w(t, x);
      CHECK(gv[0][0] + gv[1][1] == doctest::Approx(0.0));
      CHECK(gw[0][0] + gw[1][1] == doctest::Approx(0.0));
      const double e = 1.0 + std::exp(t);
      CHECK(m.v(t, x)[0] == doctest::Approx(0.9 * (std::cos(x.y) + e * std::sin(x.y))));
      CHECK(m.w(t, x)[1] == doctest::Approx(0.9 * (std::sin(x.x) - e * std::cos(x.x))));
    }
}

TEST_CASE("manufactured forcing satisfies the Elsasser system (finite differences)") {
  const double nu = 0.02, nu_m = 0.003;
  const MmsSolution m(1.0, 0.1, nu, nu_m);
  const double h = 1e-4;
  auto lap = [&](auto field, double t, const Point& x) {
    const Vec2 c = field(t, x);
    const Vec2 s = field(t, {x.x + h, x.y}) + field(t, {x.x - h, x.y}) + field(t, {x.x, x.y + h}) + field(t, {x.x, x.y - h});
    return (1.0 / (h * h)) * (s - 4.0 * c);
  };
  auto ddt = [&](auto field, double t, const Point& x) { return (0.5 / h) * (field(t + h, x) - field(t - h, x)); };
  auto adv = [&](const Vec2& wind, auto field, double t, const Point& x) {
    const Vec2 dx = (0.5 / h) * (field(t, {x.x + h, x.y}) - field(t, {x.x - h, x.y}));
    const Vec2 dy = (0.5 / h) * (field(t, {x.x, x.y + h}) - field(t, {x.x, x.y - h}));
    return wind[0] * dx + wind[1] * dy;
  };
  auto grad_scalar = [&](auto g, double t, const Point& x) {
    return Vec2{(g(t, Point{x.x + h, x.y}) - g(t, Point{x.x - h, x.y})) / (2 * h),
                (g(t, Point{x.x, x.y + h}) - g(t, Point{x.x, x.y - h})) / (2 * h)};
  };
  auto V = [&](double t, const Point& x) { return m.v(t, x); };
  auto W = [&](double t, const Point& x) { return m.w(t, x); };
  auto Q = [&](double t, const Point& x) { return m.q(t, x); };
  auto R = [&](double t, const Point& x) { return m.r(t, x); };
  for (Point x : {Point{0.25, 0.6}, Point{0.9, 0.1}}) {
    const double t = 0.4;
    const Vec2 f1 = ddt(V, t, x) + adv(m.w(t, x), V, t, x) - 0.5 * (nu + nu_m) * lap(V, t, x) -
                    0.5 * (nu - nu_m) * lap(W, t, x) + grad_scalar(Q, t, x);
    const Vec2 f2 = ddt(W, t, x) + adv(m.v(t, x), W, t, x) - 0.5 * (nu + nu_m) * lap(W, t, x) -
                    0.5 * (nu - nu_m) * lap(V, t, x) + grad_scalar(R, t, x);
    CHECK(m.f1(t, x)[0] == doctest::Approx(f1[0]).epsilon(1e-5));
    CHECK(m.f1(t, x)[1] == doctest::Approx(f1[1]).epsilon(1e-5));
    CHECK(m.f2(t, x)[0] == doctest::Approx(f2[0]).epsilon(1e-5));
    CHECK(m.f2(t, x)[1] == doctest::Approx(f2[1]).epsilon(1e-5));
  }
}
