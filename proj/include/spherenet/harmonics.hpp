#pragma once

#include <cstdint>
#include <vector>

namespace spherenet {

// Dimension and Laplace-Beltrami eigenvalue of the degree-k harmonic space on S^n.
struct HarmonicSpec {
  int n = 0;
  int k = 0;
  std::uint64_t h_k = 0;
  double lambda_k = 0.0;
};

// h_k = C(n+k, n) - C(n+k-2, n), exact; throws OverflowError past 64 bits.
std::uint64_t dim_harmonic(int n, int k);

// h_k as a double, valid where the exact integer overflows (binomials in long double).
double dim_harmonic_real(int n, int k);

double eigenvalue(int n, int k);
HarmonicSpec harmonic_spec(int n, int k);

// sum_{a<=k} dim_harmonic(n, a) == dim_harmonic(n+1, k). Always true; kept as a self-test.
bool cumulative_dim_identity_check(int n, int k);

// Zonal Legendre polynomial P_{k,n} normalized by P(1) = 1, via the three-term recurrence.
// t is clamped into [-1, 1] when |t| <= 1 + 1e-12; DomainError beyond that.
double legendre_eval(int n, int k, double t);

// P_{0,n}(t), ..., P_{max_degree,n}(t) in one recurrence pass. No domain check.
void legendre_all(int n, int max_degree, double t, double* out);

// Heat kernel on S^n truncated to degrees 0..K: coeffs[k] = exp(-lambda_k t) h_k.
// Coefficients below the double range are stored as 0.
struct HeatKernelSeries {
  int n = 0;
  double t = 0.0;
  int K = 0;
  std::vector<double> coeffs;

  // Last degree whose coefficient is nonzero in double precision; set by build_series.
  int last_nonzero = 0;
  int effective_degree() const { return last_nonzero; }
};

HeatKernelSeries build_series(int n, double t, int K);

// sum_k coeffs[k] P_{k,n}(c), where c is the cosine to the kernel's base point.
double heat_kernel_point(const HeatKernelSeries& series, double c);

// ||H_{t,K}||^2 = sum_{k<=K} exp(-2 lambda_k t) h_k.
double l2_norm_sq(const HeatKernelSeries& series);
// Same sum without the k = 0 term (the mean-zero part).
double l2_norm_sq_mean_zero(const HeatKernelSeries& series);

// Truncation chosen so that ||H_t - H_{t,M}||^2 <= eta^2:
// k0 = ceil(max{log2(1/eta), (3n/2)(1 + a_n) log2(1/t)}), M = 4^(k0/n),
// K = largest degree with k(n+k-1) <= M.
struct TruncationCutoff {
  int k0 = 0;
  double eigenvalue_cutoff = 0.0;
  int degree = 0;
};
TruncationCutoff truncation_degree(int n, double t, double eta);

// gamma_k = int_{-1}^{1} (1-t)^{1/2} (1-t^2)^{(n-2)/2} P_{k,n}(t) dt by adaptive quadrature (n >= 2).
double hecke_funk_gamma(int n, int k);

// sum_{k<=K} exp(-lambda_k t) gamma_k h_k; terms whose heat coefficient underflows are skipped.
double hecke_funk_heat_sum(int n, double t, int K);

}  // namespace spherenet
