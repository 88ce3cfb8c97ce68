#include "spherenet/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spherenet/error.hpp"

namespace spherenet {

QuadratureRule gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = (m == 1) ? 1.0 : m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(m - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  if (m % 2 == 1) rule.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return rule;
}

QuadratureRule zonal_rule(int n, int m) {
  if (n < 1) throw DimensionError("zonal_rule: n must be >= 1");
  if (m < 1) throw std::invalid_argument("zonal_rule: need at least one node");
  QuadratureRule rule;
  if (n == 1) {
    // Gauss-Chebyshev, first kind: density 1 / (pi sqrt(1 - t^2))
    for (int j = 1; j <= m; ++j) {
      rule.nodes.push_back(std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * m)));
      rule.weights.push_back(1.0 / m);
    }
    return rule;
  }
  if (n % 2 == 0) {
    // polynomial weight (1 - t^2)^((n-2)/2) folded into Gauss-Legendre
    rule = gauss_legendre(m);
    const int power = (n - 2) / 2;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      rule.weights[i] *= std::pow(1.0 - rule.nodes[i] * rule.nodes[i], power);
    }
  } else {
    // sqrt(1 - t^2) handled by Gauss-Chebyshev of the second kind, the rest is polynomial
    const int power = (n - 3) / 2;
    for (int j = 1; j <= m; ++j) {
      const double angle = j * std::numbers::pi / (m + 1.0);
      const double t = std::cos(angle);
      const double s = std::sin(angle);
      rule.nodes.push_back(t);
      rule.weights.push_back(std::numbers::pi / (m + 1.0) * s * s * std::pow(1.0 - t * t, power));
    }
  }
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

double zonal_mean(int n, const std::function<double(double)>& f, int m) {
  return zonal_rule(n, m).integrate(f);
}

SphereRule sphere_product_rule(int n, int m) {
  if (n != 2 && n != 3) throw DimensionError("sphere_product_rule supports n in {2, 3}");
  if (m < 1) throw std::invalid_argument("sphere_product_rule: need at least one node");
  const QuadratureRule lat = gauss_legendre(m);
  const int lon = 2 * m;
  SphereRule s2;
  s2.points.resize(3, static_cast<Eigen::Index>(m) * lon);
  s2.weights.reserve(static_cast<std::size_t>(m) * lon);
  Eigen::Index col = 0;
  for (int i = 0; i < m; ++i) {
    const double z = lat.nodes[static_cast<std::size_t>(i)];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < lon; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / lon;
      s2.points.col(col++) << rho * std::cos(phi), rho * std::sin(phi), z;
      s2.weights.push_back(0.5 * lat.weights[static_cast<std::size_t>(i)] / lon);
    }
  }
  if (n == 2) return s2;

  const QuadratureRule last = zonal_rule(3, m);
  SphereRule s3;
  const auto inner = s2.points.cols();
  s3.points.resize(4, static_cast<Eigen::Index>(last.nodes.size()) * inner);
  col = 0;
  for (std::size_t i = 0; i < last.nodes.size(); ++i) {
    const double w4 = last.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - w4 * w4));
    for (Eigen::Index j = 0; j < inner; ++j) {
      s3.points.col(col).head<3>() = rho * s2.points.col(j);
      s3.points(3, col) = w4;
      ++col;
      s3.weights.push_back(last.weights[i] * s2.weights[static_cast<std::size_t>(j)]);
    }
  }
  return s3;
}

namespace {

const QuadratureRule& panel_rule() {
  static const QuadratureRule rule = gauss_legendre(10);
  return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole, double tol,
             int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid);
  const double right = panel(f, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adapt(f, a, mid, left, 0.5 * tol, depth - 1) + adapt(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("adaptive_gauss_legendre: tolerance must be positive");
  if (a == b) return 0.0;
  return adapt(f, a, b, panel(f, a, b), abs_tol, max_depth);
}

}  // namespace spherenet
