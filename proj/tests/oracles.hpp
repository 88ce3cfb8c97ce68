#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// Explicit coefficient form of the zonal polynomial:
// P(t) = sum_j C_{2j} t^{k-2j} (1-t^2)^j,
// C_{2j} = (-1)^j k(k-1)...(k-2j+1) / ((2*4*...*2j) * (n(n+2)...(n+2j-2))).
inline long double legendre_explicit(int n, int k, long double t) {
  long double sum = 0.0L;
  long double c = 1.0L;
  for (int j = 0; 2 * j <= k; ++j) {
    if (j > 0) {
      c *= -1.0L * (k - 2 * j + 2) * (k - 2 * j + 1);
      c /= (2.0L * j) * (n + 2.0L * j - 2.0L);
    }
    sum += c * std::pow(t, static_cast<long double>(k - 2 * j)) *
           std::pow(1.0L - t * t, static_cast<long double>(j));
  }
  return sum;
}

inline std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return static_cast<std::uint64_t>(r);
}

// C(n+k, n) - C(n+k-2, n)
inline std::uint64_t dim_harmonic(int n, int k) {
  const std::uint64_t hi = binomial(n + k, n);
  const std::uint64_t lo = k >= 2 ? binomial(n + k - 2, n) : 0;
  return hi - lo;
}

// Uniform point on S^n by normalizing a Gaussian vector, with its own generator.
inline std::vector<double> gaussian_sphere_point(int n, std::minstd_rand& g) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> x(n + 1);
  double s = 0.0;
  for (auto& v : x) {
    v = N(g);
    s += v * v;
  }
  s = std::sqrt(s);
  for (auto& v : x) v /= s;
  return x;
}

inline long double log2l_(long double x) { return std::log(x) / std::log(2.0L); }

// Parameter formulas recomputed in 80-bit extended precision.
inline long double a_n(int n) {
  const long double x = log2l_(5.0L * n);
  return 2.0L * log2l_(x) / x;
}

inline long double r_value(int n, long double eps, long double c_n) {
  return 2.0L * eps * std::sqrt(std::log(3.0L * c_n / std::pow(eps, 2.0L * n - 1.0L)));
}

inline long double ln_factorial(int n) {
  long double s = 0.0L;
  for (int i = 2; i <= n; ++i) s += std::log(static_cast<long double>(i));
  return s;
}

inline long double k_value(int n, long double eps, long double delta) {
  return 8.0L * std::log(2.0L) *
         ((n + 4.0L) + 2.0L * std::log(1.0L / delta) + 6.0L * n * (1.0L + a_n(n)) * std::log(1.0L / eps) -
          ln_factorial(n));
}

inline long double l_value(int n, long double eps, long double r) {
  return (n / 2.0L) * log2l_(1.0L / (r * eps)) + n * (4.0L + 3.0L * a_n(n)) * log2l_(1.0L / eps);
}

inline constexpr double pi = std::numbers::pi;

}  // namespace oracle
