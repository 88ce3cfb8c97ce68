#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace spherenet {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

// m-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree <= 2m - 1.
QuadratureRule gauss_legendre(int m);

// Rule for the pushforward of the uniform probability measure on S^n under x -> <x, x0>,
// i.e. the density c_n (1 - t^2)^((n-2)/2) on [-1, 1]. Weights sum to 1.
// Exact for polynomials in t of degree <= 2m - 1 - max(n - 2, 0) (n even) or 2m - n + 2 (n odd >= 3).
QuadratureRule zonal_rule(int n, int m);

// Mean of a zonal function f(<x, x0>) over S^n.
double zonal_mean(int n, const std::function<double(double)>& f, int m);

// Product rule on the whole sphere for n in {2, 3}; points are columns, weights sum to 1.
// n = 2: Gauss-Legendre in the last coordinate times 2m uniform longitudes.
// n = 3: Gauss-Chebyshev (second kind) in the last coordinate times the n = 2 rule.
struct SphereRule {
  Eigen::MatrixXd points;
  std::vector<double> weights;
};
SphereRule sphere_product_rule(int n, int m);

// Adaptive bisection with a 10-point Gauss-Legendre panel; a panel is accepted when it agrees with
// the sum over its halves within its length share of abs_tol, or at max_depth.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double abs_tol = 1e-10, int max_depth = 40);

}  // namespace spherenet
