#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "spherenet/error.hpp"
#include "spherenet/harmonics.hpp"
#include "spherenet/quadrature.hpp"

using namespace spherenet;

TEST_CASE("harmonic dimensions against direct binomials") {
  for (int n = 1; n <= 10; ++n) {
    CHECK(dim_harmonic(n, 0) == 1);
    for (int k = 0; k <= 25; ++k) CHECK(dim_harmonic(n, k) == oracle::dim_harmonic(n, k));
  }
  CHECK(dim_harmonic(2, 3) == 7);
  for (int k = 1; k < 50; ++k) CHECK(dim_harmonic(1, k) == 2);
  CHECK(eigenvalue(2, 3) == 12.0);
  auto s = harmonic_spec(3, 2);
  CHECK(s.h_k == 9);
  CHECK(s.lambda_k == 8.0);
  CHECK_THROWS_AS(dim_harmonic(0, 1), DomainError);
}

TEST_CASE("large harmonic dimensions overflow loudly") {
  CHECK_THROWS_AS(dim_harmonic(60, 2000), OverflowError);
  CHECK(dim_harmonic_real(60, 2000) > 1e19);
  CHECK(dim_harmonic_real(2, 10) == 21.0);
}

TEST_CASE("cumulative dimension identity") {
  CHECK(cumulative_dim_identity_check(2, 0));
  CHECK(cumulative_dim_identity_check(2, 5));
  CHECK(cumulative_dim_identity_check(7, 12));
}

TEST_CASE("legendre recurrence against the explicit formula") {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= 15; ++k)
      for (int i = 0; i <= 100; ++i) {
        double t = -1.0 + 2.0 * i / 100.0;
        worst = std::max(worst, std::abs(legendre_eval(n, k, t) -
                                         static_cast<double>(oracle::legendre_explicit(n, k, t))));
      }
  CHECK(worst < 1e-9);
  for (double t : {-0.7, 0.0, 0.4}) CHECK(legendre_eval(2, 2, t) == doctest::Approx((3 * t * t - 1) / 2));
}

TEST_CASE("legendre endpoints and chebyshev") {
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= 30; ++k) {
      CHECK(std::abs(legendre_eval(n, k, 1.0) - 1.0) < 1e-12);
      CHECK(std::abs(legendre_eval(n, k, -1.0) - (k % 2 ? -1.0 : 1.0)) < 1e-12);
    }
  for (int k = 0; k <= 40; ++k)
    for (double th : {0.1, 1.0, 2.5}) CHECK(std::abs(legendre_eval(1, k, std::cos(th)) - std::cos(k * th)) < 1e-10);
  CHECK_THROWS_AS(legendre_eval(2, 3, 1.5), DomainError);
  CHECK_NOTHROW(legendre_eval(2, 3, 1.0 + 1e-14));
}

TEST_CASE("legendre_all matches pointwise evaluation") {
  double out[21];
  legendre_all(4, 20, 0.37, out);
  for (int k = 0; k <= 20; ++k) CHECK(out[k] == doctest::Approx(legendre_eval(4, k, 0.37)).epsilon(1e-14));
}

TEST_CASE("legendre orthogonality under the zonal measure") {
  for (int n : {2, 3, 5})
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        double v = zonal_mean(n, [&](double t) { return legendre_eval(n, a, t) * legendre_eval(n, b, t); }, 40);
        double want = a == b ? 1.0 / static_cast<double>(dim_harmonic(n, a)) : 0.0;
        CHECK(std::abs(v - want) < 1e-12);
      }
}

TEST_CASE("heat kernel series") {
  auto s = build_series(2, 0.1, 5);
  CHECK(s.coeffs[0] == 1.0);
  CHECK(s.coeffs[1] == doctest::Approx(3 * std::exp(-0.2)));
  auto z = build_series(3, 0.2, 0);
  CHECK(z.coeffs.size() == 1);
  CHECK(heat_kernel_point(z, -0.3) == 1.0);
  CHECK(l2_norm_sq(z) == 1.0);
  auto h = build_series(2, 0.5, 40);
  CHECK(heat_kernel_point(h, 1.0) > heat_kernel_point(h, -1.0));
  CHECK_THROWS_AS(build_series(2, 0.0, 3), DomainError);
  CHECK_THROWS_AS(build_series(2, 0.1, -1), DomainError);
  for (double c : s.coeffs) CHECK(c > 0.0);
}

TEST_CASE("heat kernel integrates to one") {
  for (int n : {2, 3, 4}) {
    auto s = build_series(n, 0.05, 60);
    double mass = zonal_mean(n, [&](double c) { return heat_kernel_point(s, c); }, 80);
    CHECK(std::abs(mass - 1.0) < 1e-9);
  }
}

TEST_CASE("l2 norm of the heat kernel") {
  auto s = build_series(2, 0.1, 60);
  double direct = zonal_mean(2, [&](double c) { double v = heat_kernel_point(s, c); return v * v; }, 200);
  CHECK(l2_norm_sq(s) == doctest::Approx(direct).epsilon(1e-9));
  CHECK(l2_norm_sq_mean_zero(s) == doctest::Approx(l2_norm_sq(s) - 1.0));
  CHECK(l2_norm_sq_mean_zero(s) < 50.0);
  double prev = 0.0;
  for (double t : {0.5, 0.2, 0.1, 0.05}) {
    double v = l2_norm_sq(build_series(2, t, 30));
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("truncation degree") {
  auto c = truncation_degree(2, 0.01, 0.1);
  CHECK(c.k0 == 41);
  int prev = 0;
  for (double eta : {0.5, 0.1, 1e-3, 1e-6}) {
    int k0 = truncation_degree(3, 0.05, eta).k0;
    CHECK(k0 >= prev);
    prev = k0;
  }
  prev = 0;
  for (double t : {0.15, 0.1, 0.01, 0.001}) {
    int k0 = truncation_degree(3, t, 0.01).k0;
    CHECK(k0 >= prev);
    prev = k0;
  }
  CHECK_THROWS_AS(truncation_degree(1, 0.01, 0.1), DomainError);
  CHECK_THROWS_AS(truncation_degree(2, 0.2, 0.1), DomainError);
  CHECK_THROWS_AS(truncation_degree(2, 0.01, 1.0), DomainError);
}

TEST_CASE("hecke funk gamma") {
  CHECK(hecke_funk_gamma(2, 0) == doctest::Approx(2.0 / 3.0 * std::pow(2.0, 1.5)).epsilon(1e-10));
  for (int n : {2, 4, 6})
    for (int k = 0; k <= 20; ++k) CHECK(std::abs(hecke_funk_gamma(n, k)) <= std::pow(2.0, 1.5) * 2.0);
  // gamma_k is the integral of sqrt(1 - t) P_k(t) against the unnormalized weight (1 - t^2)^{(n-2)/2}
  double direct = adaptive_gauss_legendre(
      [](double t) { return std::sqrt(1 - t) * legendre_eval(4, 3, t) * (1 - t * t); }, -1, 1, 1e-13);
  CHECK(hecke_funk_gamma(4, 3) == doctest::Approx(direct).epsilon(1e-8));
}
