#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spherenet/quadrature.hpp"

using namespace spherenet;

TEST_CASE("gauss legendre is exact to degree 2m-1") {
  auto q = gauss_legendre(8);
  double wsum = 0;
  for (double w : q.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  for (int p = 0; p <= 15; ++p) {
    double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(std::abs(q.integrate([p](double x) { return std::pow(x, p); }) - exact) < 1e-14);
  }
}

TEST_CASE("zonal rules reproduce the projected uniform measure") {
  // E[t^2] = 1/(n+1) for the last coordinate of a uniform point on S^n
  for (int n = 1; n <= 7; ++n) {
    CHECK(zonal_mean(n, [](double) { return 1.0; }, 10) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(zonal_mean(n, [](double t) { return t * t; }, 10) == doctest::Approx(1.0 / (n + 1)).epsilon(1e-13));
    CHECK(std::abs(zonal_mean(n, [](double t) { return t * t * t; }, 10)) < 1e-14);
  }
  // E[t^4] on S^2 is 1/5
  CHECK(zonal_mean(2, [](double t) { return std::pow(t, 4); }, 6) == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("sphere product rules integrate low-degree polynomials") {
  for (int n : {2, 3}) {
    auto r = sphere_product_rule(n, 8);
    double wsum = 0, x0sq = 0, x0x1 = 0, quartic = 0;
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
      auto p = r.points.col(static_cast<Eigen::Index>(i));
      CHECK(std::abs(p.norm() - 1) < 1e-14);
      wsum += r.weights[i];
      x0sq += r.weights[i] * p[0] * p[0];
      x0x1 += r.weights[i] * p[0] * p[1];
      quartic += r.weights[i] * std::pow(p[n], 4);
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x0sq == doctest::Approx(1.0 / (n + 1)).epsilon(1e-13));
    CHECK(std::abs(x0x1) < 1e-14);
    CHECK(quartic == doctest::Approx(3.0 / ((n + 1) * (n + 3))).epsilon(1e-13));
  }
  CHECK_THROWS(sphere_product_rule(4, 5));
}

TEST_CASE("adaptive gauss legendre handles endpoint singularities") {
  double v = adaptive_gauss_legendre([](double t) { return std::sqrt(1 - t); }, -1, 1, 1e-12);
  CHECK(v == doctest::Approx(2.0 / 3.0 * std::pow(2.0, 1.5)).epsilon(1e-10));
  double s = adaptive_gauss_legendre([](double t) { return std::sin(t); }, 0, std::numbers::pi);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
}
