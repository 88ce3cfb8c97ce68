#include "spherenet/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spherenet/error.hpp"
#include "spherenet/params.hpp"
#include "spherenet/quadrature.hpp"

namespace spherenet {

namespace {

// C(m, r) exactly, with C(m, r) = 0 for m < r.
std::uint64_t binomial_exact(int m, int r) {
  if (r < 0 || m < r) return 0;
  r = std::min(r, m - r);
  unsigned __int128 result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (m - r + i) / i stays integral at every step
    result = result * static_cast<unsigned>(m - r + i);
    result /= static_cast<unsigned>(i);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binomial C(" + std::to_string(m) + ", " + std::to_string(r) +
                          ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

long double binomial_real(int m, int r) {
  if (r < 0 || m < r) return 0.0L;
  r = std::min(r, m - r);
  long double result = 1.0L;
  for (int i = 1; i <= r; ++i) result = result * (m - r + i) / i;
  return result;
}

// log h_k from log-gamma; used only to decide when a coefficient underflows.
double log_dim_harmonic(int n, int k) {
  if (k == 0) return 0.0;
  if (n == 1) return std::log(2.0);
  return std::log(2.0 * k + n - 1) + std::lgamma(k + n - 1.0) - std::lgamma(k + 1.0) - std::lgamma(n);
}

void check_degree(int n, int k) {
  if (n < 1) throw DomainError("sphere dimension n must be >= 1, got " + std::to_string(n));
  if (k < 0) throw DomainError("degree k must be >= 0, got " + std::to_string(k));
}

}  // namespace

std::uint64_t dim_harmonic(int n, int k) {
  check_degree(n, k);
  if (k == 0) return 1;
  // The difference fits whenever the minuend does; the converse may fail, so
  // compute through the product form when the binomial itself overflows.
  try {
    return binomial_exact(n + k, n) - binomial_exact(n + k - 2, n);
  } catch (const OverflowError&) {
    // h_k = (2k + n - 1) (k + n - 2)! / (k! (n - 1)!)
    //     = (2k + n - 1) / (n - 1) * C(k + n - 2, k)   for n >= 2
    if (n < 2) throw;
    unsigned __int128 c = binomial_exact(k + n - 2, k);
    c *= static_cast<unsigned>(2 * k + n - 1);
    c /= static_cast<unsigned>(n - 1);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("dim_harmonic(" + std::to_string(n) + ", " + std::to_string(k) +
                          ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(c);
  }
}

double dim_harmonic_real(int n, int k) {
  check_degree(n, k);
  if (k == 0) return 1.0;
  return static_cast<double>(binomial_real(n + k, n) - binomial_real(n + k - 2, n));
}

double eigenvalue(int n, int k) { return static_cast<double>(k) * (n + k - 1); }

HarmonicSpec harmonic_spec(int n, int k) { return {n, k, dim_harmonic(n, k), eigenvalue(n, k)}; }

bool cumulative_dim_identity_check(int n, int k) {
  check_degree(n, k);
  unsigned __int128 sum = 0;
  for (int a = 0; a <= k; ++a) sum += dim_harmonic(n, a);
  return sum == dim_harmonic(n + 1, k);
}

void legendre_all(int n, int max_degree, double t, double* out) {
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = t;
  for (int k = 1; k < max_degree; ++k) {
    out[k + 1] = ((2.0 * k + n - 1) * t * out[k] - k * out[k - 1]) / (k + n - 1);
  }
}

double legendre_eval(int n, int k, double t) {
  check_degree(n, k);
  if (!(std::abs(t) <= 1.0 + 1e-12)) {
    throw DomainError("legendre_eval: argument " + std::to_string(t) + " outside [-1, 1]");
  }
  t = std::clamp(t, -1.0, 1.0);
  if (k == 0) return 1.0;
  double p0 = 1.0;
  double p1 = t;
  for (int j = 1; j < k; ++j) {
    const double p2 = ((2.0 * j + n - 1) * t * p1 - j * p0) / (j + n - 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

HeatKernelSeries build_series(int n, double t, int K) {
  if (n < 1) throw DomainError("build_series: n must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("build_series: t must be positive");
  if (K < 0) throw DomainError("build_series: K must be >= 0");
  HeatKernelSeries s{n, t, K, std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0)};
  s.coeffs[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    const double exponent = -eigenvalue(n, k) * t;
    // past k ~ n/t the coefficients only decrease; stop once they underflow
    if (k > n / t && exponent + log_dim_harmonic(n, k) < -745.0) break;
    double h;
    try {
      h = static_cast<double>(dim_harmonic(n, k));
    } catch (const OverflowError&) {
      h = dim_harmonic_real(n, k);
    }
    s.coeffs[static_cast<std::size_t>(k)] = std::exp(exponent + std::log(h));
    if (s.coeffs[static_cast<std::size_t>(k)] != 0.0) s.last_nonzero = k;
  }
  return s;
}

double heat_kernel_point(const HeatKernelSeries& series, double c) {
  if (!(std::abs(c) <= 1.0 + 1e-12)) {
    throw DomainError("heat_kernel_point: cosine " + std::to_string(c) + " outside [-1, 1]");
  }
  c = std::clamp(c, -1.0, 1.0);
  const int n = series.n;
  const int top = series.effective_degree();
  double sum = series.coeffs[0];
  if (top == 0) return sum;
  double p0 = 1.0;
  double p1 = c;
  sum += series.coeffs[1] * p1;
  for (int k = 1; k < top; ++k) {
    const double p2 = ((2.0 * k + n - 1) * c * p1 - k * p0) / (k + n - 1);
    p0 = p1;
    p1 = p2;
    sum += series.coeffs[static_cast<std::size_t>(k) + 1] * p1;
  }
  return sum;
}

namespace {

double l2_sum(const HeatKernelSeries& s, int first) {
  double sum = 0.0;
  for (int k = first; k <= s.K; ++k) {
    const double exponent = -2.0 * eigenvalue(s.n, k) * s.t;
    if (k > s.n / s.t && exponent + log_dim_harmonic(s.n, k) < -745.0) break;
    double h;
    try {
      h = static_cast<double>(dim_harmonic(s.n, k));
    } catch (const OverflowError&) {
      h = dim_harmonic_real(s.n, k);
    }
    sum += std::exp(exponent + std::log(h));
  }
  return sum;
}

}  // namespace

double l2_norm_sq(const HeatKernelSeries& series) { return l2_sum(series, 0); }

double l2_norm_sq_mean_zero(const HeatKernelSeries& series) { return l2_sum(series, 1); }

TruncationCutoff truncation_degree(int n, double t, double eta) {
  if (n < 2) throw DomainError("truncation_degree: requires n >= 2 (got n = " + std::to_string(n) + ")");
  if (!(t > 0.0 && t < 1.0 / 6.0)) {
    throw DomainError("truncation_degree: requires t in (0, 1/6), got t = " + std::to_string(t));
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("truncation_degree: requires eta in (0, 1), got eta = " + std::to_string(eta));
  }
  const double a_n = compute_a_n(n);
  const double bound = std::max(std::log2(1.0 / eta), 1.5 * n * (1.0 + a_n) * std::log2(1.0 / t));
  TruncationCutoff cut;
  cut.k0 = static_cast<int>(std::ceil(bound));
  cut.eigenvalue_cutoff = std::pow(4.0, static_cast<double>(cut.k0) / n);
  // largest k with k (n + k - 1) <= M
  const double m = cut.eigenvalue_cutoff;
  double k = std::floor(0.5 * (-(n - 1.0) + std::sqrt((n - 1.0) * (n - 1.0) + 4.0 * m)));
  while (k > 0 && eigenvalue(n, static_cast<int>(k)) > m) k -= 1.0;
  while (eigenvalue(n, static_cast<int>(k) + 1) <= m) k += 1.0;
  cut.degree = static_cast<int>(k);
  return cut;
}

double hecke_funk_gamma(int n, int k) {
  if (n < 2) throw DomainError("hecke_funk_gamma: requires n >= 2 (n = 1 has an endpoint singularity)");
  if (k < 0) throw DomainError("hecke_funk_gamma: k must be >= 0");
  const double power = 0.5 * (n - 2);
  auto integrand = [n, k, power](double t) {
    t = std::clamp(t, -1.0, 1.0);
    return std::sqrt(1.0 - t) * std::pow(1.0 - t * t, power) * legendre_eval(n, k, t);
  };
  return adaptive_gauss_legendre(integrand, -1.0, 1.0, 1e-10, 40);
}

double hecke_funk_heat_sum(int n, double t, int K) {
  const HeatKernelSeries series = build_series(n, t, K);
  double sum = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double c = series.coeffs[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    sum += c * hecke_funk_gamma(n, k);
  }
  return sum;
}

}  // namespace spherenet
