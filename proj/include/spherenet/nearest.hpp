#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace spherenet {

// Nearest-neighbor queries against a fixed point set on the sphere. Brute force below
// kGridThreshold points or above 4 ambient dimensions; otherwise a uniform hash grid in the
// ambient cube searched in expanding Chebyshev shells.
class NearestNeighborIndex {
 public:
  static constexpr std::size_t kGridThreshold = 10'000;

  explicit NearestNeighborIndex(const Eigen::MatrixXd& points);

  // Squared Euclidean distance from q to the closest indexed point.
  double nearest_distance_sq(const Eigen::VectorXd& q) const;

  bool uses_grid() const { return use_grid_; }

 private:
  std::uint64_t key_of(const std::vector<int>& cell) const;
  std::vector<int> cell_of(const double* x) const;
  void scan_cell(const std::vector<int>& cell, const Eigen::VectorXd& q, double& best) const;

  const Eigen::MatrixXd& points_;
  bool use_grid_ = false;
  int dims_ = 0;
  double cell_size_ = 0.0;
  int cells_per_axis_ = 0;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> buckets_;
};

}  // namespace spherenet
