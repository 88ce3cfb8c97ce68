#include "spherenet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "spherenet/error.hpp"
#include "spherenet/harmonics.hpp"
#include "spherenet/nearest.hpp"
#include "spherenet/parallel.hpp"

namespace spherenet {

CoveringEstimate covering_radius(const SphericalNet& net, std::uint64_t probes, Rng& rng) {
  if (net.empty()) throw std::invalid_argument("covering_radius: net is empty");
  if (probes == 0) throw std::invalid_argument("covering_radius: need at least one probe");
  const int n = net.dim();
  // draw all probes up front so the rng stream does not depend on the thread count
  Eigen::MatrixXd queries(n + 1, static_cast<Eigen::Index>(probes));
  for (std::uint64_t p = 0; p < probes; ++p) {
    queries.col(static_cast<Eigen::Index>(p)) = sample_uniform_sphere(n, rng).coords();
  }
  const NearestNeighborIndex index(net.points());
  std::mutex merge;
  double worst_sq = 0.0;
  parallel_chunks(probes, [&](std::size_t begin, std::size_t end) {
    double local = 0.0;
    Eigen::VectorXd q(n + 1);
    for (std::size_t p = begin; p < end; ++p) {
      q = queries.col(static_cast<Eigen::Index>(p));
      local = std::max(local, index.nearest_distance_sq(q));
    }
    std::lock_guard lock(merge);
    worst_sq = std::max(worst_sq, local);
  });
  // chord length c maps to geodesic angle 2 asin(c / 2)
  const double chord = std::sqrt(worst_sq);
  return {2.0 * std::asin(std::min(1.0, 0.5 * chord)), probes};
}

namespace {

struct WeightedPoints {
  Eigen::MatrixXd points;
  std::vector<double> weights;
};

WeightedPoints discrepancy_points(const SphericalNet& net, std::uint64_t seed) {
  const auto total = static_cast<double>(net.total_weight());
  WeightedPoints wp;
  if (net.size() <= kDiscrepancyPointCap) {
    wp.points = net.points();
    wp.weights.reserve(net.size());
    for (const auto m : net.multiplicities()) wp.weights.push_back(static_cast<double>(m) / total);
    return wp;
  }
  // multiplicity-proportional sampling with replacement; repeated draws merge into counts
  Rng rng(seed);
  std::discrete_distribution<std::size_t> pick(net.multiplicities().begin(), net.multiplicities().end());
  std::vector<std::uint64_t> counts(net.size(), 0);
  for (std::size_t s = 0; s < kDiscrepancyPointCap; ++s) ++counts[pick(rng)];
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) kept.push_back(i);
  }
  wp.points.resize(net.points().rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    wp.points.col(static_cast<Eigen::Index>(j)) = net.point(kept[j]);
    wp.weights.push_back(static_cast<double>(counts[kept[j]]) / static_cast<double>(kDiscrepancyPointCap));
  }
  return wp;
}

// On S^2 the explicit real harmonics give D_d as the norm of the mean feature vector,
// exact in O(N) with no subsampling.
std::map<int, double> discrepancy_s2(const SphericalNet& net, int max_degree) {
  const std::size_t width = static_cast<std::size_t>(max_degree + 1) * static_cast<std::size_t>(max_degree + 1);
  const auto total = static_cast<double>(net.total_weight());
  // fixed chunking keeps the summation order independent of the thread count
  const std::size_t chunks = std::min<std::size_t>(64, net.size());
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(width, 0.0));
  parallel_for_each(chunks, [&](std::size_t c) {
    std::vector<double> y(width);
    auto& local = partial[c];
    for (std::size_t i = c * net.size() / chunks; i < (c + 1) * net.size() / chunks; ++i) {
      const Eigen::Vector3d x = net.point(i);
      real_spherical_harmonics(max_degree, x, y.data());
      const double w = static_cast<double>(net.multiplicity(i)) / total;
      for (std::size_t j = 0; j < width; ++j) local[j] += w * y[j];
    }
  });
  std::vector<double> mean(width, 0.0);
  for (const auto& part : partial)
    for (std::size_t j = 0; j < width; ++j) mean[j] += part[j];
  std::map<int, double> out;
  for (int d = 1; d <= max_degree; ++d) {
    double q = 0.0;
    for (int j = d * d; j < (d + 1) * (d + 1); ++j) q += mean[static_cast<std::size_t>(j)] * mean[static_cast<std::size_t>(j)];
    out[d] = std::sqrt(q);
  }
  return out;
}

}  // namespace

std::map<int, double> harmonic_discrepancy(const SphericalNet& net, int max_degree, std::uint64_t subsample_seed) {
  if (net.empty() || net.total_weight() == 0) throw std::invalid_argument("harmonic_discrepancy: net is empty");
  if (max_degree < 1) throw std::invalid_argument("harmonic_discrepancy: max_degree must be >= 1");
  const int n = net.dim();
  std::vector<double> h(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) h[static_cast<std::size_t>(d)] = static_cast<double>(dim_harmonic(n, d));

  if (n == 2) return discrepancy_s2(net, max_degree);

  const WeightedPoints wp = discrepancy_points(net, subsample_seed);
  const auto count = static_cast<std::size_t>(wp.points.cols());
  const auto rows = static_cast<std::size_t>(wp.points.rows());
  const double* data = wp.points.data();
  const std::size_t degrees = static_cast<std::size_t>(max_degree) + 1;

  // sum_i w_i^2 P(1) + 2 sum_{i<j} w_i w_j P(x_i . x_j), accumulated per chunk of rows
  const unsigned chunks = std::max(1u, std::min<unsigned>(thread_count() * 4, static_cast<unsigned>(count)));
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(degrees, 0.0));
  parallel_for_each(chunks, [&](std::size_t c) {
    std::vector<double> p(degrees);
    std::vector<double> row(degrees);
    auto& acc = partial[c];
    // interleaved rows balance the triangular loop
    for (std::size_t i = c; i < count; i += chunks) {
      const double* xi = data + i * rows;
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t j = i + 1; j < count; ++j) {
        const double* xj = data + j * rows;
        double dot = 0.0;
        for (std::size_t r = 0; r < rows; ++r) dot += xi[r] * xj[r];
        dot = std::clamp(dot, -1.0, 1.0);
        legendre_all(n, max_degree, dot, p.data());
        const double wj = wp.weights[j];
        for (std::size_t d = 1; d < degrees; ++d) row[d] += wj * p[d];
      }
      const double wi = wp.weights[i];
      for (std::size_t d = 1; d < degrees; ++d) acc[d] += wi * wi + 2.0 * wi * row[d];
    }
  });

  std::map<int, double> out;
  for (std::size_t d = 1; d < degrees; ++d) {
    double q = 0.0;
    for (const auto& part : partial) q += part[d];
    q *= h[d];
    if (q < 0.0 && q >= -1e-10) q = 0.0;
    out[static_cast<int>(d)] = std::sqrt(std::max(0.0, q));
  }
  return out;
}

double integrate(const SphericalNet& net, const SphereFunction& f) {
  if (net.empty()) throw std::invalid_argument("integrate: net is empty");
  double sum = 0.0;
  Eigen::VectorXd x(net.points().rows());
  for (std::size_t i = 0; i < net.size(); ++i) {
    x = net.point(i);
    sum += static_cast<double>(net.multiplicity(i)) * f(x);
  }
  return sum / static_cast<double>(net.total_weight());
}

std::vector<Eigen::VectorXd> builtin_anchors(int n) {
  if (n < 1) throw DimensionError("builtin_anchors: n must be >= 1");
  constexpr std::size_t kAnchors = 20;
  std::vector<Eigen::VectorXd> anchors;
  auto axis = [n](int i, double sign) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
    v[i] = sign;
    return v;
  };
  anchors.push_back(axis(n, 1.0));
  anchors.push_back(axis(n, -1.0));
  for (int i = 0; i < n && anchors.size() < kAnchors; ++i) {
    anchors.push_back(axis(i, 1.0));
    if (anchors.size() < kAnchors) anchors.push_back(axis(i, -1.0));
  }
  if (anchors.size() >= kAnchors) return anchors;

  Rng rng(0x9E3779B97F4A7C15ULL);
  std::vector<Eigen::VectorXd> pool;
  for (int i = 0; i < 2000; ++i) pool.push_back(sample_uniform_sphere(n, rng).coords());
  std::vector<double> gap(pool.size(), 1e9);
  auto refresh = [&](const Eigen::VectorXd& a) {
    for (std::size_t i = 0; i < pool.size(); ++i) gap[i] = std::min(gap[i], geodesic_distance(pool[i], a));
  };
  for (const auto& a : anchors) refresh(a);
  while (anchors.size() < kAnchors) {
    const auto best = static_cast<std::size_t>(std::max_element(gap.begin(), gap.end()) - gap.begin());
    anchors.push_back(pool[best]);
    refresh(pool[best]);
  }
  return anchors;
}

namespace {

constexpr int kPairCount = 10;
constexpr int kPairSamples = 1'000'000;

struct PairMeans {
  std::vector<double> mean;
  std::vector<double> stderr_;
};

PairMeans pair_means(int n, const std::vector<Eigen::VectorXd>& anchors) {
  static std::mutex mutex;
  static std::map<int, PairMeans> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  PairMeans pm;
  std::vector<double> sum(kPairCount, 0.0);
  std::vector<double> sum_sq(kPairCount, 0.0);
  Rng rng(0xC0FFEEULL + static_cast<std::uint64_t>(n));
  for (int s = 0; s < kPairSamples; ++s) {
    const Eigen::VectorXd x = sample_uniform_sphere(n, rng).coords();
    for (int p = 0; p < kPairCount; ++p) {
      const double v = std::min(geodesic_distance(x, anchors[static_cast<std::size_t>(p)]),
                                geodesic_distance(x, anchors[static_cast<std::size_t>(p + kPairCount)]));
      sum[static_cast<std::size_t>(p)] += v;
      sum_sq[static_cast<std::size_t>(p)] += v * v;
    }
  }
  for (int p = 0; p < kPairCount; ++p) {
    const double mean = sum[static_cast<std::size_t>(p)] / kPairSamples;
    const double var = sum_sq[static_cast<std::size_t>(p)] / kPairSamples - mean * mean;
    pm.mean.push_back(mean);
    pm.stderr_.push_back(std::sqrt(std::max(0.0, var) / kPairSamples));
  }
  cache.emplace(n, pm);
  return pm;
}

}  // namespace

std::vector<LipschitzTest> builtin_lipschitz_family(int n) {
  const auto anchors = builtin_anchors(n);
  std::vector<LipschitzTest> family;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Eigen::VectorXd a = anchors[i];
    family.push_back({"dist_anchor_" + std::to_string(i),
                      [a](const Eigen::VectorXd& x) { return geodesic_distance(x, a); }, std::numbers::pi / 2.0,
                      0.0});
  }
  for (int j = 0; j <= n; ++j) {
    // |x_j - y_j| <= |x - y| <= geodesic distance, so each coordinate is 1-Lipschitz
    family.push_back({"coord_" + std::to_string(j), [j](const Eigen::VectorXd& x) { return x[j]; }, 0.0, 0.0});
  }
  const PairMeans pm = pair_means(n, anchors);
  for (int p = 0; p < kPairCount; ++p) {
    const Eigen::VectorXd a = anchors[static_cast<std::size_t>(p)];
    const Eigen::VectorXd b = anchors[static_cast<std::size_t>(p + kPairCount)];
    family.push_back({"min_dist_pair_" + std::to_string(p),
                      [a, b](const Eigen::VectorXd& x) {
                        return std::min(geodesic_distance(x, a), geodesic_distance(x, b));
                      },
                      pm.mean[static_cast<std::size_t>(p)], pm.stderr_[static_cast<std::size_t>(p)]});
  }
  return family;
}

std::map<std::string, double> integration_errors(const SphericalNet& net, const std::vector<LipschitzTest>& family) {
  std::map<std::string, double> out;
  for (const auto& test : family) out[test.name] = std::abs(test.uniform_mean - integrate(net, test.f));
  return out;
}

double w1_lower_bound(const SphericalNet& net, const std::vector<LipschitzTest>& family) {
  if (family.empty()) throw std::invalid_argument("w1_lower_bound: test family is empty");
  double bound = 0.0;
  for (const auto& test : family) bound = std::max(bound, std::abs(test.uniform_mean - integrate(net, test.f)));
  return bound;
}

std::vector<Eigen::Matrix2cd> su2_export(const SphericalNet& net) {
  if (net.dim() != 3) throw DimensionError("su2_export: requires a net on S^3, got n = " + std::to_string(net.dim()));
  using C = std::complex<double>;
  std::vector<Eigen::Matrix2cd> out;
  out.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto p = net.point(i);
    Eigen::Matrix2cd u;
    u << C(p[0], p[1]), C(p[2], p[3]), C(-p[2], p[3]), C(p[0], -p[1]);
    const double unitarity = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (unitarity > 1e-10 || std::abs(u.determinant() - C(1.0, 0.0)) > 1e-10) {
      throw DomainError("su2_export: point " + std::to_string(i) + " does not map into SU(2)");
    }
    out.push_back(u);
  }
  return out;
}

QualityReport analyze(const SphericalNet& net, const AnalyzeOptions& options) {
  QualityReport report;
  Rng rng(options.seed);
  report.covering = covering_radius(net, options.probes, rng);
  report.discrepancy = harmonic_discrepancy(net, options.max_degree, options.seed);
  const auto family = builtin_lipschitz_family(net.dim());
  report.integration_errors = integration_errors(net, family);
  report.w1_lower_bound = w1_lower_bound(net, family);
  report.dim = net.dim();
  report.distinct_points = net.size();
  report.total_weight = net.total_weight();
  report.meta = net.meta();
  return report;
}

}  // namespace spherenet
