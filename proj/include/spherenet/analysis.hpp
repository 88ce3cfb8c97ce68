#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spherenet/geometry.hpp"
#include "spherenet/netgen.hpp"

namespace spherenet {

// Max over iid uniform probes of the geodesic distance to the nearest net point.
// A statistical lower estimate of the covering radius.
struct CoveringEstimate {
  double radius = 0.0;
  std::uint64_t probes = 0;
};

CoveringEstimate covering_radius(const SphericalNet& net, std::uint64_t probes, Rng& rng);

// Distinct-point cap above which the discrepancy is computed on a weighted subsample.
inline constexpr std::size_t kDiscrepancyPointCap = 20'000;

// D_d = sqrt(sum_ij w_i w_j h_d P_{d,n}(x_i . x_j)) for d = 1..max_degree, w_i = m_i / sum m.
// On S^2 this is evaluated exactly through real harmonic features; other dimensions use the
// kernel form, on a weighted subsample above kDiscrepancyPointCap distinct points.
// This is the norm of the net-averaged degree-d harmonic feature vector; it is zero exactly when
// every degree-d harmonic integrates to zero against the net.
std::map<int, double> harmonic_discrepancy(const SphericalNet& net, int max_degree,
                                           std::uint64_t subsample_seed = 0);

using SphereFunction = std::function<double(const Eigen::VectorXd&)>;

// Multiplicity-weighted mean of f over the net.
double integrate(const SphericalNet& net, const SphereFunction& f);

// A 1-Lipschitz test function (geodesic metric) with its mean under the uniform measure.
struct LipschitzTest {
  std::string name;
  SphereFunction f;
  double uniform_mean = 0.0;
  // Zero for analytic means; Monte Carlo standard error otherwise.
  double uniform_mean_stderr = 0.0;
};

// Anchors used by the built-in family: +-e_{n+1}, +-e_1, ..., then greedy farthest points from a
// fixed pseudo-random pool, 20 in total.
std::vector<Eigen::VectorXd> builtin_anchors(int n);

// Distances to 20 anchors (mean pi/2), the n+1 coordinate functions (mean 0), and ten
// min-distance-to-anchor-pair functions whose means come from a cached 10^6-sample Monte Carlo.
std::vector<LipschitzTest> builtin_lipschitz_family(int n);

// |uniform mean - net mean| per family member.
std::map<std::string, double> integration_errors(const SphericalNet& net, const std::vector<LipschitzTest>& family);

// max over the family of |uniform mean - net mean|; a lower bound on W_1(uniform, net).
double w1_lower_bound(const SphericalNet& net, const std::vector<LipschitzTest>& family);

// Real spherical harmonics on S^2, orthonormal for the uniform probability measure.
// Fills values with Y_{l,m} for l <= max_degree at index l^2 + j, where j = 0 is m = 0 and
// j = 2m - 1, 2m are the cos and sin parts of order m.
void real_spherical_harmonics(int max_degree, const Eigen::Vector3d& x, double* values);

// Matrix of T = (1/k) sum_s A_s on H_d(S^2), A_s f(x) = f(x)/2 + (f(s x) + f(s^-1 x))/4,
// with entries <T phi_i, phi_j> from product quadrature with `resolution` latitude nodes.
// Not symmetrized: symmetry holds up to quadrature error.
Eigen::MatrixXd averaging_operator_matrix(const GeneratorSet& gens, int degree, int resolution);

// Top eigenvalue of the averaging operator on each H_d, d = 1..max_degree (S^2 only).
// ResolutionError when resolution < 2 max_degree + 2.
std::map<int, double> averaging_gap(const GeneratorSet& gens, int max_degree, int resolution);

// (a, b, c, d) on S^3 -> [[a + bi, c + di], [-c + di, a - bi]], one matrix per stored point.
std::vector<Eigen::Matrix2cd> su2_export(const SphericalNet& net);

struct QualityReport {
  CoveringEstimate covering;
  std::map<int, double> discrepancy;
  std::map<std::string, double> integration_errors;
  double w1_lower_bound = 0.0;
  std::optional<std::map<int, double>> gap_estimates;

  int dim = 0;
  std::size_t distinct_points = 0;
  std::uint64_t total_weight = 0;
  NetMeta meta;
};

struct AnalyzeOptions {
  std::uint64_t probes = 100'000;
  int max_degree = 6;
  std::uint64_t seed = 0;
};

QualityReport analyze(const SphericalNet& net, const AnalyzeOptions& options);

}  // namespace spherenet
