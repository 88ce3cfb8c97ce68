#pragma once

#include <cstdint>

namespace spherenet {

// Parameters prescribed by the construction's guarantees for target scale eps and failure
// probability delta. c_n is the unspecified dimension constant; it only shifts r.
struct TheoremParams {
  int n = 0;
  double eps = 0.0;
  double delta = 0.0;
  double c_n = 1.0;

  double a_n = 0.0;
  double t = 0.0;  // eps^2
  double r = 0.0;
  std::int64_t k = 0;
  std::int64_t l = 0;
  // l from the Wasserstein statement, which drops the factor n on the (4 + 3 a_n) term.
  std::int64_t l_without_n = 0;
  // log2((2k)^l) = l (1 + log2 k)
  double log2_word_count = 0.0;
};

// a_n = 2 log2 log2(5n) / log2(5n), n >= 2.
double compute_a_n(int n);

// r = 2 eps sqrt(ln(3 c_n / eps^(2n-1))); DomainError unless the logarithm's argument exceeds 1.
double compute_r(int n, double eps, double c_n);

// Unrounded right-hand side of the generator-count bound.
double compute_k_real(int n, double eps, double delta);
// ceil of compute_k_real; requires eps in (0, 1/(3n)), delta in (0, 1).
std::int64_t compute_k(int n, double eps, double delta);

// (n/2) log2(1/(r eps)) + (4 + 3 a_n) n log2(1/eps), unrounded.
double compute_l_real(int n, double eps, double r);
std::int64_t compute_l(int n, double eps, double r);
// Variant without the factor n on the second term.
double compute_l_without_n_real(int n, double eps, double r);

TheoremParams theorem_params(int n, double eps, double delta, double c_n = 1.0);

}  // namespace spherenet
