#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace spherenet {

// 64-bit seedable engine with period 2^19937 - 1.
using Rng = std::mt19937_64;

inline constexpr double kUnitNormTolerance = 1e-12;

// A point of S^n stored as n+1 coordinates of unit Euclidean norm.
class UnitVector {
 public:
  // Validates that coords has norm 1 within tolerance and at least 2 entries.
  explicit UnitVector(Eigen::VectorXd coords, double tolerance = kUnitNormTolerance);

  // Rescales any nonzero vector onto the sphere.
  static UnitVector normalized(const Eigen::VectorXd& v);
  // The pole e_{n+1} = (0, ..., 0, 1).
  static UnitVector north_pole(int n);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  friend bool operator==(const UnitVector& a, const UnitVector& b) {
    return a.coords_ == b.coords_;
  }

 private:
  struct Unchecked {};
  UnitVector(Eigen::VectorXd coords, Unchecked) : coords_(std::move(coords)) {}

  Eigen::VectorXd coords_;
};

// An element of SO(n+1).
class Rotation {
 public:
  // Validates orthogonality and det = +1 (tolerance on the max-entry residual of M^T M - I).
  explicit Rotation(Eigen::MatrixXd matrix, double tolerance = 1e-9);

  static Rotation identity(int n);
  // Planar rotation by angle (n = 1).
  static Rotation planar(double angle);

  int dim() const { return static_cast<int>(matrix_.rows()) - 1; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  // max |(M^T M - I)_ij|
  double orthogonality_residual() const;
  double determinant() const { return matrix_.determinant(); }

  friend bool operator==(const Rotation& a, const Rotation& b) { return a.matrix_ == b.matrix_; }

 private:
  struct Unchecked {};
  Rotation(Eigen::MatrixXd matrix, Unchecked) : matrix_(std::move(matrix)) {}

  friend Rotation inverse(const Rotation& r);
  friend Rotation compose(const Rotation& a, const Rotation& b);
  friend Rotation sample_haar_rotation(int n, Rng& rng);

  Eigen::MatrixXd matrix_;
};

// k rotations S; the alphabet used for words is S together with the inverses.
struct GeneratorSet {
  std::vector<Rotation> generators;
  std::uint64_t seed = 0;
  int dim = 0;

  int k() const { return static_cast<int>(generators.size()); }
};

// Haar-distributed element of SO(n+1): Gaussian matrix, QR with positive-diagonal R,
// last row negated when det = -1.
Rotation sample_haar_rotation(int n, Rng& rng);

// k iid Haar rotations drawn from an engine seeded with seed.
GeneratorSet sample_generator_set(int n, int k, std::uint64_t seed);

// Builds a GeneratorSet from explicit rotations (all of equal dimension).
GeneratorSet make_generator_set(std::vector<Rotation> generators, std::uint64_t seed = 0);

// r x, renormalized onto the sphere.
UnitVector apply(const Rotation& r, const UnitVector& x);
// In-place variant on raw coordinates; out and x must not alias.
void apply_into(const Eigen::MatrixXd& r, const Eigen::VectorXd& x, Eigen::VectorXd& out);

Rotation inverse(const Rotation& r);

// a b (b acts first). Re-orthonormalized when the residual exceeds 1e-10.
Rotation compose(const Rotation& a, const Rotation& b);

// Geodesic distance arccos(<x, y>) with the inner product clamped to [-1, 1].
double geodesic_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Uniform point on S^n as a normalized Gaussian vector.
UnitVector sample_uniform_sphere(int n, Rng& rng);

}  // namespace spherenet
