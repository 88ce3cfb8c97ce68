#include "spherenet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spherenet/error.hpp"
#include "spherenet/parallel.hpp"

namespace spherenet {

std::string to_string(NetMode mode) { return mode == NetMode::kFull ? "full" : "sampled"; }

NetMode parse_net_mode(const std::string& s) {
  if (s == "full") return NetMode::kFull;
  if (s == "sampled") return NetMode::kSampled;
  throw std::invalid_argument("unknown net mode '" + s + "'");
}

SphericalNet::SphericalNet(Eigen::MatrixXd points, std::vector<std::uint64_t> multiplicities, NetMeta meta)
    : points_(std::move(points)), multiplicities_(std::move(multiplicities)), meta_(std::move(meta)) {
  if (points_.rows() < 2) throw DimensionError("net points need at least 2 coordinates");
  if (static_cast<std::size_t>(points_.cols()) != multiplicities_.size()) {
    throw DimensionError("net has " + std::to_string(points_.cols()) + " points but " +
                         std::to_string(multiplicities_.size()) + " multiplicities");
  }
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    if (!points_.col(i).allFinite() || std::abs(points_.col(i).norm() - 1.0) > 1e-10) {
      throw DomainError("net point " + std::to_string(i) + " is not unit-norm");
    }
    if (multiplicities_[static_cast<std::size_t>(i)] == 0) {
      throw DomainError("net point " + std::to_string(i) + " has zero multiplicity");
    }
  }
}

std::uint64_t SphericalNet::total_weight() const {
  return std::accumulate(multiplicities_.begin(), multiplicities_.end(), std::uint64_t{0});
}

SphericalNet dedupe_points(const Eigen::MatrixXd& points, const std::vector<std::uint64_t>& weights,
                           NetMeta meta) {
  const auto count = static_cast<std::size_t>(points.cols());
  if (weights.size() != count) throw DimensionError("dedupe_points: weights/points size mismatch");
  const double tol = meta.dedupe_tolerance;
  const double tol_sq = tol * tol;
  const auto dim = points.rows();

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double pa = points(r, static_cast<Eigen::Index>(a));
      const double pb = points(r, static_cast<Eigen::Index>(b));
      if (pa != pb) return pa < pb;
    }
    return a < b;
  });

  // Representatives are appended in sorted order, so their first coordinates never decrease;
  // only those with first coordinate >= p_0 - tol can be within tol of p.
  std::vector<std::size_t> reps;
  std::vector<std::uint64_t> rep_weight;
  for (const std::size_t idx : order) {
    const auto p = points.col(static_cast<Eigen::Index>(idx));
    std::ptrdiff_t hit = -1;
    for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(reps.size()) - 1; j >= 0; --j) {
      const auto q = points.col(static_cast<Eigen::Index>(reps[static_cast<std::size_t>(j)]));
      if (q[0] < p[0] - tol) break;
      if ((q - p).squaredNorm() <= tol_sq) {
        hit = j;
        break;
      }
    }
    if (hit >= 0) {
      rep_weight[static_cast<std::size_t>(hit)] += weights[idx];
    } else {
      reps.push_back(idx);
      rep_weight.push_back(weights[idx]);
    }
  }

  Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(reps.size()));
  for (std::size_t j = 0; j < reps.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = points.col(static_cast<Eigen::Index>(reps[j]));
  }
  return SphericalNet(std::move(out), std::move(rep_weight), std::move(meta));
}

bool word_count_within(int k, int l, std::uint64_t limit, std::uint64_t* count) {
  if (k < 1 || l < 0) throw std::invalid_argument("word_count_within: need k >= 1, l >= 0");
  const auto base = static_cast<std::uint64_t>(2 * k);
  std::uint64_t total = 1;
  for (int i = 0; i < l; ++i) {
    if (total > limit / base) return false;
    total *= base;
  }
  if (total > limit) return false;
  if (count) *count = total;
  return true;
}

double log2_word_count(int k, int l) { return l * std::log2(2.0 * k); }

namespace {

// Alphabet matrices in branch order: generators, then their inverses.
std::vector<Eigen::MatrixXd> alphabet(const GeneratorSet& gens) {
  std::vector<Eigen::MatrixXd> letters;
  letters.reserve(2 * gens.generators.size());
  for (const auto& g : gens.generators) letters.push_back(g.matrix());
  for (const auto& g : gens.generators) letters.push_back(g.matrix().transpose());
  return letters;
}

int letter_label(int index, int k) { return index < k ? index + 1 : -(index - k + 1); }

int letter_index(int label, int k) {
  if (label == 0 || std::abs(label) > k) {
    throw std::out_of_range("word letter " + std::to_string(label) + " outside [-" + std::to_string(k) +
                            ", " + std::to_string(k) + "] \\ {0}");
  }
  return label > 0 ? label - 1 : k + (-label) - 1;
}

void check_base_point(const GeneratorSet& gens, const UnitVector& x0) {
  if (gens.generators.empty()) throw std::invalid_argument("generator set is empty");
  if (x0.dim() != gens.dim) {
    throw DimensionError("base point dim " + std::to_string(x0.dim()) + " vs generator dim " +
                         std::to_string(gens.dim));
  }
}

}  // namespace

void for_each_leaf(const GeneratorSet& gens, int l, const UnitVector& x0, const LeafVisitor& visit,
                   int first_letter) {
  check_base_point(gens, x0);
  if (l < 0) throw std::invalid_argument("word length must be >= 0");
  const int k = gens.k();
  const auto letters = alphabet(gens);
  const int branching = 2 * k;

  if (l == 0) {
    visit(std::span<const int>{}, x0.coords());
    return;
  }

  // path[d] is the letter index at depth d, image[d + 1] the point after d + 1 letters
  std::vector<int> path(static_cast<std::size_t>(l), 0);
  std::vector<int> labels(static_cast<std::size_t>(l), 0);
  std::vector<Eigen::VectorXd> image(static_cast<std::size_t>(l) + 1, Eigen::VectorXd(x0.coords().size()));
  image[0] = x0.coords();

  int depth = 0;
  int root_begin = 0;
  int root_end = branching;
  if (first_letter != 0) {
    root_begin = letter_index(first_letter, k);
    root_end = root_begin + 1;
  }
  path[0] = root_begin;
  while (depth >= 0) {
    const int limit = depth == 0 ? root_end : branching;
    if (path[static_cast<std::size_t>(depth)] >= limit) {
      --depth;
      if (depth >= 0) ++path[static_cast<std::size_t>(depth)];
      continue;
    }
    const int a = path[static_cast<std::size_t>(depth)];
    labels[static_cast<std::size_t>(depth)] = letter_label(a, k);
    apply_into(letters[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(depth)],
               image[static_cast<std::size_t>(depth) + 1]);
    if (depth + 1 == l) {
      visit(std::span<const int>(labels), image[static_cast<std::size_t>(l)]);
      ++path[static_cast<std::size_t>(depth)];
    } else {
      ++depth;
      path[static_cast<std::size_t>(depth)] = 0;
    }
  }
}

SphericalNet enumerate_net(const GeneratorSet& gens, int l, const UnitVector& x0,
                           const EnumerateOptions& options) {
  check_base_point(gens, x0);
  if (l < 0) throw std::invalid_argument("word length must be >= 0");
  const int k = gens.k();
  std::uint64_t total = 0;
  if (!word_count_within(k, l, options.cap, &total)) {
    std::ostringstream msg;
    msg << "full enumeration needs (2k)^l = 2^" << log2_word_count(k, l) << " leaves, above the cap of "
        << options.cap << "; use sampled mode";
    throw CapacityError(msg.str(), log2_word_count(k, l));
  }

  NetMeta meta{k, l, gens.seed, x0.coords(), NetMode::kFull, options.dedupe_tolerance};
  const auto rows = x0.coords().size();
  if (l == 0) return SphericalNet(Eigen::MatrixXd(x0.coords()), {1}, std::move(meta));

  // one leaf buffer per first letter; concatenated in letter order
  const int branching = 2 * k;
  std::vector<std::vector<double>> buffers(static_cast<std::size_t>(branching));
  auto traverse = [&](std::size_t b) {
    auto& buf = buffers[b];
    buf.reserve(static_cast<std::size_t>(total / branching) * static_cast<std::size_t>(rows));
    for_each_leaf(gens, l, x0,
                  [&buf](std::span<const int>, const Eigen::VectorXd& p) {
                    buf.insert(buf.end(), p.data(), p.data() + p.size());
                  },
                  letter_label(static_cast<int>(b), k));
  };
  if (options.parallel) {
    parallel_for_each(buffers.size(), traverse);
  } else {
    for (std::size_t b = 0; b < buffers.size(); ++b) traverse(b);
  }

  Eigen::MatrixXd leaves(rows, static_cast<Eigen::Index>(total));
  Eigen::Index col = 0;
  for (auto& buf : buffers) {
    const auto cols = static_cast<Eigen::Index>(buf.size()) / rows;
    leaves.middleCols(col, cols) = Eigen::Map<const Eigen::MatrixXd>(buf.data(), rows, cols);
    col += cols;
    std::vector<double>().swap(buf);
  }
  return dedupe_points(leaves, std::vector<std::uint64_t>(static_cast<std::size_t>(total), 1), std::move(meta));
}

SphericalNet sample_words_net(const GeneratorSet& gens, int l, const UnitVector& x0, std::uint64_t m,
                              Rng& rng, double dedupe_tolerance) {
  check_base_point(gens, x0);
  if (l < 0) throw std::invalid_argument("word length must be >= 0");
  if (m < 1) throw std::invalid_argument("sample count m must be >= 1");
  const int k = gens.k();
  const auto letters = alphabet(gens);
  const auto rows = x0.coords().size();
  std::uniform_int_distribution<int> pick(0, 2 * k - 1);

  Eigen::MatrixXd leaves(rows, static_cast<Eigen::Index>(m));
  Eigen::VectorXd cur(rows);
  Eigen::VectorXd next(rows);
  for (std::uint64_t s = 0; s < m; ++s) {
    cur = x0.coords();
    for (int d = 0; d < l; ++d) {
      apply_into(letters[static_cast<std::size_t>(pick(rng))], cur, next);
      cur.swap(next);
    }
    leaves.col(static_cast<Eigen::Index>(s)) = cur;
  }
  NetMeta meta{k, l, gens.seed, x0.coords(), NetMode::kSampled, dedupe_tolerance};
  return dedupe_points(leaves, std::vector<std::uint64_t>(static_cast<std::size_t>(m), 1), std::move(meta));
}

Rotation word_to_rotation(const Word& w, const GeneratorSet& gens) {
  if (gens.generators.empty()) throw std::invalid_argument("generator set is empty");
  const int k = gens.k();
  Rotation acc = Rotation::identity(gens.dim);
  for (const int label : w.letters) {
    const int a = letter_index(label, k);
    const Rotation& g = gens.generators[static_cast<std::size_t>(a % k)];
    acc = compose(a < k ? g : inverse(g), acc);
  }
  return acc;
}

UnitVector word_image(const Word& w, const GeneratorSet& gens, const UnitVector& x0) {
  check_base_point(gens, x0);
  const int k = gens.k();
  const auto letters = alphabet(gens);
  Eigen::VectorXd cur = x0.coords();
  Eigen::VectorXd next(cur.size());
  for (const int label : w.letters) {
    apply_into(letters[static_cast<std::size_t>(letter_index(label, k))], cur, next);
    cur.swap(next);
  }
  return UnitVector::normalized(cur);
}

}  // namespace spherenet
