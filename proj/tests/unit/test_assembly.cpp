#include <doctest.h>

#include "../common/assembly_checks.hpp"

TEST_CASE("every operator kind matches the dense brute-force oracle") {
  for (const auto& [name, diff] : oracle::assembly_oracle_differences()) {
    CAPTURE(name);
    CHECK(diff <= 1e-12);
  }
}

TEST_CASE("oracle quadrature integrates monomials on a triangle") {
  // Reference triangle: int x^a y^b = a! b! / (a + b + 2)!
  auto fact = [](int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  const auto pts = oracle::triangle_points({0, 0}, {1, 0}, {0, 1});
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 12; ++b) {
      double s = 0.0;
      for (const auto& q : pts) s += q.weight * std::pow(q.x.x, a) * std::pow(q.x.y, b);
      CHECK(s == doctest::Approx(fact(a) * fact(b) / fact(a + b + 2)).epsilon(1e-13));
    }
}
