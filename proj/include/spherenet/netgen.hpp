#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spherenet/geometry.hpp"

namespace spherenet {

inline constexpr double kDefaultDedupeTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultLeafCap = 10'000'000;

// Signed 1-based generator indices: +i is generator i, -i its inverse.
struct Word {
  std::vector<int> letters;

  std::size_t length() const { return letters.size(); }
};

enum class NetMode { kFull, kSampled };

std::string to_string(NetMode mode);
NetMode parse_net_mode(const std::string& s);

struct NetMeta {
  int k = 0;
  int l = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd x0;
  NetMode mode = NetMode::kFull;
  double dedupe_tolerance = kDefaultDedupeTolerance;
};

// Weighted point set on S^n. Points are the columns of an (n+1) x N matrix; each carries a
// positive integer multiplicity. Stored points are pairwise farther apart than the dedupe tolerance.
class SphericalNet {
 public:
  SphericalNet() = default;
  // Validates shapes, unit norms (1e-10) and positive multiplicities.
  SphericalNet(Eigen::MatrixXd points, std::vector<std::uint64_t> multiplicities, NetMeta meta);

  int dim() const { return static_cast<int>(points_.rows()) - 1; }
  std::size_t size() const { return multiplicities_.size(); }
  bool empty() const { return multiplicities_.empty(); }

  const Eigen::MatrixXd& points() const { return points_; }
  auto point(std::size_t i) const { return points_.col(static_cast<Eigen::Index>(i)); }
  const std::vector<std::uint64_t>& multiplicities() const { return multiplicities_; }
  std::uint64_t multiplicity(std::size_t i) const { return multiplicities_[i]; }
  std::uint64_t total_weight() const;
  const NetMeta& meta() const { return meta_; }

 private:
  Eigen::MatrixXd points_;
  std::vector<std::uint64_t> multiplicities_;
  NetMeta meta_;
};

// Merges points closer than tolerance (Euclidean) into one representative, summing weights.
// Points are processed in lexicographic coordinate order, so the result does not depend on
// input order up to ties. Every input lies within tolerance of its representative.
SphericalNet dedupe_points(const Eigen::MatrixXd& points, const std::vector<std::uint64_t>& weights,
                           NetMeta meta);

// Whether (2k)^l <= limit, computed without overflow; count receives (2k)^l when it fits.
bool word_count_within(int k, int l, std::uint64_t limit, std::uint64_t* count = nullptr);
double log2_word_count(int k, int l);

// Leaf visitor for the word tree: (letters of the word, image of x0 under it).
using LeafVisitor = std::function<void(std::span<const int>, const Eigen::VectorXd&)>;

// Depth-first traversal of all (2k)^l words, one matrix-vector product per tree node.
// For word (s_1, ..., s_l) the leaf point is s_l (... (s_1 x0)); letters at each branch are
// ordered +1, ..., +k, -1, ..., -k. When first_letter != 0 only that subtree is visited.
void for_each_leaf(const GeneratorSet& gens, int l, const UnitVector& x0, const LeafVisitor& visit,
                   int first_letter = 0);

struct EnumerateOptions {
  std::uint64_t cap = kDefaultLeafCap;
  double dedupe_tolerance = kDefaultDedupeTolerance;
  // Split the tree into 2k subtrees by first letter and traverse them concurrently.
  bool parallel = true;
};

// The full net x0 S^l with word multiplicities. CapacityError when (2k)^l > cap.
SphericalNet enumerate_net(const GeneratorSet& gens, int l, const UnitVector& x0,
                           const EnumerateOptions& options = {});

// m iid uniform words of length l (each letter uniform over the 2k symbols), deduplicated.
SphericalNet sample_words_net(const GeneratorSet& gens, int l, const UnitVector& x0, std::uint64_t m,
                              Rng& rng, double dedupe_tolerance = kDefaultDedupeTolerance);

// Product s_l ... s_1 of the word's letters, so that apply(word_to_rotation(w), x0) is the leaf point.
Rotation word_to_rotation(const Word& w, const GeneratorSet& gens);

// Leaf point of w computed letter by letter exactly as the traversal does.
UnitVector word_image(const Word& w, const GeneratorSet& gens, const UnitVector& x0);

}  // namespace spherenet
