#include "spherenet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spherenet/error.hpp"

namespace spherenet {

namespace {

double max_orthogonality_residual(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  return (m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

// One Newton-Schulz step toward the nearest orthogonal matrix.
Eigen::MatrixXd reorthonormalize(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  return 0.5 * m * (3.0 * Eigen::MatrixXd::Identity(n, n) - m.transpose() * m);
}

}  // namespace

UnitVector::UnitVector(Eigen::VectorXd coords, double tolerance) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw DimensionError("unit vector needs at least 2 coordinates (n >= 1)");
  }
  if (!coords_.allFinite() || std::abs(coords_.norm() - 1.0) > tolerance) {
    throw DomainError("coordinates are not unit-norm");
  }
}

UnitVector UnitVector::normalized(const Eigen::VectorXd& v) {
  if (v.size() < 2) throw DimensionError("unit vector needs at least 2 coordinates (n >= 1)");
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalize a zero or non-finite vector");
  return UnitVector(v / norm, Unchecked{});
}

UnitVector UnitVector::north_pole(int n) {
  if (n < 1) throw DimensionError("sphere dimension must be >= 1");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
  v[n] = 1.0;
  return UnitVector(std::move(v), Unchecked{});
}

Rotation::Rotation(Eigen::MatrixXd matrix, double tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
    throw DimensionError("rotation matrix must be square with size >= 2");
  }
  if (!matrix_.allFinite() || max_orthogonality_residual(matrix_) > tolerance) {
    throw DomainError("matrix is not orthogonal");
  }
  if (std::abs(matrix_.determinant() - 1.0) > tolerance) {
    throw DomainError("matrix determinant is not +1");
  }
}

Rotation Rotation::identity(int n) {
  if (n < 1) throw DimensionError("rotation dimension must be >= 1");
  return Rotation(Eigen::MatrixXd::Identity(n + 1, n + 1), Unchecked{});
}

Rotation Rotation::planar(double angle) {
  Eigen::MatrixXd m(2, 2);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m << c, -s, s, c;
  return Rotation(std::move(m), Unchecked{});
}

double Rotation::orthogonality_residual() const { return max_orthogonality_residual(matrix_); }

Rotation sample_haar_rotation(int n, Rng& rng) {
  if (n < 1) throw DimensionError("sample_haar_rotation: n must be >= 1, got " + std::to_string(n));
  const int size = n + 1;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(size, size);
  // fill column by column so the draw order is fixed
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < size; ++i) a(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(size, size);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < size; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.row(size - 1) = -q.row(size - 1);
  return Rotation(std::move(q), Rotation::Unchecked{});
}

GeneratorSet sample_generator_set(int n, int k, std::uint64_t seed) {
  if (n < 1) throw DimensionError("sample_generator_set: n must be >= 1");
  if (k < 1) throw std::invalid_argument("sample_generator_set: k must be >= 1");
  Rng rng(seed);
  GeneratorSet set;
  set.seed = seed;
  set.dim = n;
  set.generators.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) set.generators.push_back(sample_haar_rotation(n, rng));
  return set;
}

GeneratorSet make_generator_set(std::vector<Rotation> generators, std::uint64_t seed) {
  if (generators.empty()) throw std::invalid_argument("generator set needs k >= 1 rotations");
  const int n = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != n) throw DimensionError("generators must share one dimension");
  }
  return GeneratorSet{std::move(generators), seed, n};
}

void apply_into(const Eigen::MatrixXd& r, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
  out.noalias() = r * x;
  out /= out.norm();
}

UnitVector apply(const Rotation& r, const UnitVector& x) {
  if (r.dim() != x.dim()) {
    throw DimensionError("apply: rotation dim " + std::to_string(r.dim()) + " vs point dim " +
                         std::to_string(x.dim()));
  }
  Eigen::VectorXd out(x.coords().size());
  apply_into(r.matrix(), x.coords(), out);
  return UnitVector::normalized(out);
}

Rotation inverse(const Rotation& r) { return Rotation(r.matrix_.transpose(), Rotation::Unchecked{}); }

Rotation compose(const Rotation& a, const Rotation& b) {
  if (a.dim() != b.dim()) throw DimensionError("compose: dimension mismatch");
  Eigen::MatrixXd m = a.matrix_ * b.matrix_;
  if (max_orthogonality_residual(m) > 1e-10) m = reorthonormalize(m);
  return Rotation(std::move(m), Rotation::Unchecked{});
}

double geodesic_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return std::acos(std::clamp(x.dot(y), -1.0, 1.0));
}

UnitVector sample_uniform_sphere(int n, Rng& rng) {
  if (n < 1) throw DimensionError("sphere dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n + 1);
  do {
    for (int i = 0; i <= n; ++i) v[i] = gauss(rng);
  } while (v.squaredNorm() == 0.0);
  return UnitVector::normalized(v);
}

}  // namespace spherenet
