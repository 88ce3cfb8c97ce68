#include "spherenet/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spherenet/error.hpp"

namespace spherenet {

namespace {

void check_n(int n) {
  if (n < 2) throw DomainError("n must be >= 2 for a_n to be defined, got n = " + std::to_string(n));
}

void check_eps(int n, double eps) {
  if (!(eps > 0.0 && eps < 1.0 / (3.0 * n))) {
    throw DomainError("eps must lie in (0, 1/(3n)) = (0, " + std::to_string(1.0 / (3.0 * n)) +
                      "), got " + std::to_string(eps));
  }
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void check_unit_interval(const char* name, double v) {
  if (!(v > 0.0 && v < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

}  // namespace

double compute_a_n(int n) {
  check_n(n);
  const double x = std::log2(5.0 * n);
  return 2.0 * std::log2(x) / x;
}

double compute_r(int n, double eps, double c_n) {
  check_n(n);
  check_unit_interval("eps", eps);
  if (!(c_n > 0.0) || !std::isfinite(c_n)) throw DomainError("c_n must be positive");
  // ln(3 c_n) - (2n - 1) ln(eps), kept in log form to avoid underflow of eps^(2n-1)
  const double log_arg = std::log(3.0 * c_n) - (2.0 * n - 1.0) * std::log(eps);
  if (!(log_arg > 0.0)) {
    throw DomainError("r undefined: 3 c_n <= eps^(2n-1) makes the logarithm non-positive");
  }
  return 2.0 * eps * std::sqrt(log_arg);
}

double compute_k_real(int n, double eps, double delta) {
  check_n(n);
  check_eps(n, eps);
  check_delta(delta);
  const double a_n = compute_a_n(n);
  return 8.0 * std::numbers::ln2 *
         ((n + 4.0) + 2.0 * std::log(1.0 / delta) + 6.0 * n * (1.0 + a_n) * std::log(1.0 / eps) -
          std::lgamma(n + 1.0));
}

std::int64_t compute_k(int n, double eps, double delta) {
  return static_cast<std::int64_t>(std::ceil(compute_k_real(n, eps, delta)));
}

double compute_l_real(int n, double eps, double r) {
  check_n(n);
  check_unit_interval("eps", eps);
  check_unit_interval("r", r);
  const double a_n = compute_a_n(n);
  return 0.5 * n * std::log2(1.0 / (r * eps)) + (4.0 + 3.0 * a_n) * n * std::log2(1.0 / eps);
}

std::int64_t compute_l(int n, double eps, double r) {
  return static_cast<std::int64_t>(std::ceil(compute_l_real(n, eps, r)));
}

double compute_l_without_n_real(int n, double eps, double r) {
  check_n(n);
  check_unit_interval("eps", eps);
  check_unit_interval("r", r);
  const double a_n = compute_a_n(n);
  return 0.5 * n * std::log2(1.0 / (r * eps)) + (4.0 + 3.0 * a_n) * std::log2(1.0 / eps);
}

TheoremParams theorem_params(int n, double eps, double delta, double c_n) {
  check_n(n);
  check_eps(n, eps);
  check_delta(delta);
  TheoremParams p;
  p.n = n;
  p.eps = eps;
  p.delta = delta;
  p.c_n = c_n;
  p.a_n = compute_a_n(n);
  p.t = eps * eps;
  p.r = compute_r(n, eps, c_n);
  p.k = compute_k(n, eps, delta);
  p.l = compute_l(n, eps, p.r);
  p.l_without_n = static_cast<std::int64_t>(std::ceil(compute_l_without_n_real(n, eps, p.r)));
  p.log2_word_count = static_cast<double>(p.l) * (1.0 + std::log2(static_cast<double>(p.k)));
  return p;
}

}  // namespace spherenet
