#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spherenet/analysis.hpp"
#include "spherenet/error.hpp"
#include "spherenet/quadrature.hpp"

namespace spherenet {

void real_spherical_harmonics(int max_degree, const Eigen::Vector3d& x, double* values) {
  const double z = std::clamp(x[2], -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = std::atan2(x[1], x[0]);
  const int L = max_degree;
  const auto stride = static_cast<std::size_t>(L) + 1;
  // nbar[l * stride + m]: associated Legendre normalized so that the m = 0 harmonic is
  // sqrt(2l + 1) P_l and each order carries unit mean square over the sphere
  std::vector<double> nbar(stride * stride, 0.0);
  auto at = [&](int l, int m) -> double& { return nbar[static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(m)]; };
  at(0, 0) = 1.0;
  for (int m = 1; m <= L; ++m) at(m, m) = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * at(m - 1, m - 1);
  for (int m = 0; m < L; ++m) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * z * at(m, m);
  for (int m = 0; m <= L; ++m) {
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1) * (l - 1) - 1.0));
      at(l, m) = a * (z * at(l - 1, m) - b * at(l - 2, m));
    }
  }
  for (int l = 0; l <= L; ++l) {
    double* out = values + static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
    out[0] = at(l, 0);
    for (int m = 1; m <= l; ++m) {
      out[2 * m - 1] = std::numbers::sqrt2 * at(l, m) * std::cos(m * phi);
      out[2 * m] = std::numbers::sqrt2 * at(l, m) * std::sin(m * phi);
    }
  }
}

namespace {

void check_gap_inputs(const GeneratorSet& gens, int max_degree, int resolution) {
  if (gens.dim != 2) {
    throw DimensionError("averaging_gap: unsupported dimension n = " + std::to_string(gens.dim) + " (only S^2)");
  }
  if (gens.generators.empty()) throw std::invalid_argument("averaging_gap: generator set is empty");
  if (max_degree < 1 || max_degree > 20) throw std::invalid_argument("averaging_gap: max_degree must be in [1, 20]");
  if (resolution < 2 * max_degree + 2) {
    throw ResolutionError("averaging_gap: resolution " + std::to_string(resolution) + " below the " +
                          std::to_string(2 * max_degree + 2) + " latitude nodes needed for degree " +
                          std::to_string(max_degree));
  }
}

// Matrices for every degree 1..max_degree in one pass over the quadrature grid.
std::vector<Eigen::MatrixXd> assemble(const GeneratorSet& gens, int max_degree, int resolution) {
  const SphereRule rule = sphere_product_rule(2, resolution);
  const auto nodes = static_cast<std::size_t>(rule.points.cols());
  const auto width = static_cast<std::size_t>(max_degree + 1) * static_cast<std::size_t>(max_degree + 1);

  Eigen::MatrixXd base(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(nodes));
  for (std::size_t q = 0; q < nodes; ++q) {
    real_spherical_harmonics(max_degree, rule.points.col(static_cast<Eigen::Index>(q)), base.col(static_cast<Eigen::Index>(q)).data());
  }
  // shifted[:, q] = sum_s Y(s x_q) + Y(s^-1 x_q)
  Eigen::MatrixXd shifted = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(nodes));
  Eigen::VectorXd tmp(static_cast<Eigen::Index>(width));
  for (const auto& g : gens.generators) {
    const Eigen::Matrix3d s = g.matrix();
    for (std::size_t q = 0; q < nodes; ++q) {
      const Eigen::Vector3d x = rule.points.col(static_cast<Eigen::Index>(q));
      real_spherical_harmonics(max_degree, s * x, tmp.data());
      shifted.col(static_cast<Eigen::Index>(q)) += tmp;
      real_spherical_harmonics(max_degree, s.transpose() * x, tmp.data());
      shifted.col(static_cast<Eigen::Index>(q)) += tmp;
    }
  }
  Eigen::VectorXd w(static_cast<Eigen::Index>(nodes));
  for (std::size_t q = 0; q < nodes; ++q) w[static_cast<Eigen::Index>(q)] = rule.weights[q];

  const double scale = 1.0 / (4.0 * gens.k());
  std::vector<Eigen::MatrixXd> out;
  for (int d = 1; d <= max_degree; ++d) {
    const auto first = static_cast<Eigen::Index>(d) * d;
    const auto size = static_cast<Eigen::Index>(2 * d + 1);
    // entry (i, j) = <T phi_i, phi_j>
    Eigen::MatrixXd m = scale * shifted.middleRows(first, size) * w.asDiagonal() * base.middleRows(first, size).transpose();
    m.diagonal().array() += 0.5;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Eigen::MatrixXd averaging_operator_matrix(const GeneratorSet& gens, int degree, int resolution) {
  check_gap_inputs(gens, degree, resolution);
  return assemble(gens, degree, resolution).back();
}

std::map<int, double> averaging_gap(const GeneratorSet& gens, int max_degree, int resolution) {
  check_gap_inputs(gens, max_degree, resolution);
  const auto matrices = assemble(gens, max_degree, resolution);
  std::map<int, double> out;
  for (int d = 1; d <= max_degree; ++d) {
    const Eigen::MatrixXd& m = matrices[static_cast<std::size_t>(d - 1)];
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    out[d] = solver.eigenvalues().maxCoeff();
  }
  return out;
}

}  // namespace spherenet
