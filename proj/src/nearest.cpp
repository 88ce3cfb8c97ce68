#include "spherenet/nearest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace spherenet {

NearestNeighborIndex::NearestNeighborIndex(const Eigen::MatrixXd& points) : points_(points) {
  dims_ = static_cast<int>(points.rows());
  const auto count = static_cast<std::size_t>(points.cols());
  use_grid_ = count >= kGridThreshold && dims_ <= 4;
  if (!use_grid_) return;

  // about four points per occupied cell: surface area of S^n over N, to the power 1/n
  const int n = dims_ - 1;
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  cell_size_ = std::pow(4.0 * area / static_cast<double>(count), 1.0 / n);
  cells_per_axis_ = static_cast<int>(std::ceil(2.0 / cell_size_)) + 1;

  std::vector<std::uint64_t> keys(count);
  for (std::size_t i = 0; i < count; ++i) {
    keys[i] = key_of(cell_of(points.col(static_cast<Eigen::Index>(i)).data()));
  }
  order_.resize(count);
  std::iota(order_.begin(), order_.end(), 0u);
  std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i;
    while (j < count && keys[order_[j]] == keys[order_[i]]) ++j;
    buckets_[keys[order_[i]]] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j - i)};
    i = j;
  }
}

std::vector<int> NearestNeighborIndex::cell_of(const double* x) const {
  std::vector<int> cell(static_cast<std::size_t>(dims_));
  for (int d = 0; d < dims_; ++d) {
    const int c = static_cast<int>(std::floor((x[d] + 1.0) / cell_size_));
    cell[static_cast<std::size_t>(d)] = std::clamp(c, 0, cells_per_axis_ - 1);
  }
  return cell;
}

std::uint64_t NearestNeighborIndex::key_of(const std::vector<int>& cell) const {
  std::uint64_t key = 0;
  for (const int c : cell) key = (key << 16) | static_cast<std::uint64_t>(c);
  return key;
}

void NearestNeighborIndex::scan_cell(const std::vector<int>& cell, const Eigen::VectorXd& q,
                                     double& best) const {
  const auto it = buckets_.find(key_of(cell));
  if (it == buckets_.end()) return;
  const auto [start, len] = it->second;
  for (std::uint32_t j = start; j < start + len; ++j) {
    const double d2 = (points_.col(order_[j]) - q).squaredNorm();
    best = std::min(best, d2);
  }
}

double NearestNeighborIndex::nearest_distance_sq(const Eigen::VectorXd& q) const {
  double best = std::numeric_limits<double>::infinity();
  if (!use_grid_) {
    for (Eigen::Index i = 0; i < points_.cols(); ++i) best = std::min(best, (points_.col(i) - q).squaredNorm());
    return best;
  }
  const std::vector<int> center = cell_of(q.data());
  std::vector<int> offset(static_cast<std::size_t>(dims_));
  std::vector<int> cell(static_cast<std::size_t>(dims_));
  for (int shell = 0; shell <= cells_per_axis_; ++shell) {
    // every cell at Chebyshev offset exactly `shell`
    std::fill(offset.begin(), offset.end(), -shell);
    while (true) {
      bool on_shell = false;
      bool inside = true;
      for (int d = 0; d < dims_; ++d) {
        const int o = offset[static_cast<std::size_t>(d)];
        if (std::abs(o) == shell) on_shell = true;
        const int c = center[static_cast<std::size_t>(d)] + o;
        if (c < 0 || c >= cells_per_axis_) inside = false;
        cell[static_cast<std::size_t>(d)] = c;
      }
      if (on_shell && inside) scan_cell(cell, q, best);
      int d = 0;
      while (d < dims_ && ++offset[static_cast<std::size_t>(d)] > shell) {
        offset[static_cast<std::size_t>(d)] = -shell;
        ++d;
      }
      if (d == dims_) break;
    }
    // anything outside the searched cube is at least shell * cell_size away
    const double reach = shell * cell_size_;
    if (best <= reach * reach) break;
  }
  return best;
}

}  // namespace spherenet
