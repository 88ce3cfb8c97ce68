#include <doctest.h>

#include <cmath>
#include <map>

#include "spherenet/error.hpp"
#include "spherenet/netgen.hpp"

using namespace spherenet;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("word counts") {
  std::uint64_t c = 0;
  CHECK(word_count_within(3, 5, 10'000, &c));
  CHECK(c == 7776);
  CHECK_FALSE(word_count_within(8, 40, kDefaultLeafCap));
  CHECK_FALSE(word_count_within(707, 106, ~0ULL));
  CHECK(log2_word_count(707, 106) == doctest::Approx(106 * std::log2(1414.0)));
}

TEST_CASE("full enumeration totals (2k)^l") {
  const UnitVector x0 = UnitVector::north_pole(2);
  for (int k = 1; k <= 3; ++k) {
    auto gens = sample_generator_set(2, k, 100 + k);
    for (int l = 0; l <= 6; ++l) {
      auto net = enumerate_net(gens, l, x0);
      CHECK(net.total_weight() == ipow(2 * k, l));
      CHECK(net.meta().k == k);
      CHECK(net.meta().l == l);
    }
  }
}

TEST_CASE("degenerate nets") {
  const UnitVector x0 = UnitVector::north_pole(2);
  auto gens = sample_generator_set(2, 2, 1);
  auto zero = enumerate_net(gens, 0, x0);
  REQUIRE(zero.size() == 1);
  CHECK(zero.multiplicity(0) == 1);
  CHECK(zero.point(0).isApprox(x0.coords()));

  auto id = make_generator_set({Rotation::identity(2)});
  auto net = enumerate_net(id, 5, x0);
  REQUIRE(net.size() == 1);
  CHECK(net.multiplicity(0) == 32);

  Rng rng(4);
  auto s = sample_words_net(gens, 0, x0, 100, rng);
  REQUIRE(s.size() == 1);
  CHECK(s.multiplicity(0) == 100);
  CHECK(s.meta().mode == NetMode::kSampled);
}

TEST_CASE("capacity") {
  auto gens = sample_generator_set(2, 8, 1);
  EnumerateOptions opt;
  opt.cap = 1000;
  CHECK_THROWS_AS(enumerate_net(gens, 40, UnitVector::north_pole(2), opt), CapacityError);
  try {
    enumerate_net(gens, 40, UnitVector::north_pole(2), opt);
  } catch (const CapacityError& e) {
    CHECK(e.log2_required() == doctest::Approx(160.0));
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  auto gens = sample_generator_set(3, 3, 9);
  EnumerateOptions serial;
  serial.parallel = false;
  auto a = enumerate_net(gens, 5, UnitVector::north_pole(3));
  auto b = enumerate_net(gens, 5, UnitVector::north_pole(3), serial);
  CHECK(a.points() == b.points());
  CHECK(a.multiplicities() == b.multiplicities());
}

TEST_CASE("leaf order and word images") {
  auto gens = sample_generator_set(2, 2, 17);
  const UnitVector x0 = UnitVector::north_pole(2);
  std::vector<std::vector<int>> words;
  std::vector<Eigen::VectorXd> pts;
  for_each_leaf(gens, 3, x0, [&](std::span<const int> w, const Eigen::VectorXd& p) {
    words.emplace_back(w.begin(), w.end());
    pts.push_back(p);
  });
  REQUIRE(words.size() == 64);
  CHECK(words.front() == std::vector<int>{1, 1, 1});
  CHECK(words[1] == std::vector<int>{1, 1, 2});
  CHECK(words[2] == std::vector<int>{1, 1, -1});
  CHECK(words.back() == std::vector<int>{-2, -2, -2});
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word w{words[i]};
    CHECK((apply(word_to_rotation(w, gens), x0).coords() - pts[i]).norm() < 1e-9);
    CHECK((word_image(w, gens, x0).coords() - pts[i]).norm() < 1e-12);
  }
}

TEST_CASE("word_to_rotation") {
  auto gens = sample_generator_set(3, 2, 5);
  CHECK(word_to_rotation(Word{}, gens) == Rotation::identity(3));
  auto r = word_to_rotation(Word{{1, -1}}, gens);
  CHECK((r.matrix() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-10);
  // s_l ... s_1
  auto r2 = word_to_rotation(Word{{1, 2}}, gens);
  CHECK((r2.matrix() - gens.generators[1].matrix() * gens.generators[0].matrix()).norm() < 1e-12);
  CHECK_THROWS(word_to_rotation(Word{{3}}, gens));
}

TEST_CASE("dedupe merges close points and keeps far ones") {
  Eigen::MatrixXd p(3, 4);
  p.col(0) = Eigen::Vector3d(0, 0, 1);
  p.col(1) = Eigen::Vector3d(1e-11, 0, 1).normalized();
  p.col(2) = Eigen::Vector3d(1, 0, 0);
  p.col(3) = Eigen::Vector3d(0, 0, 1);
  auto net = dedupe_points(p, {1, 2, 3, 4}, NetMeta{});
  CHECK(net.size() == 2);
  CHECK(net.total_weight() == 10);
  std::map<double, std::uint64_t> by_z;
  for (std::size_t i = 0; i < net.size(); ++i) by_z[std::round(net.point(i)[2])] = net.multiplicity(i);
  CHECK(by_z[1.0] == 7);
  CHECK(by_z[0.0] == 3);
}

TEST_CASE("dedupe is order independent") {
  Rng rng(2);
  Eigen::MatrixXd p(3, 200);
  for (int i = 0; i < 200; ++i) p.col(i) = sample_uniform_sphere(2, rng).coords();
  Eigen::MatrixXd q = p.rowwise().reverse();
  std::vector<std::uint64_t> w(200, 1);
  auto a = dedupe_points(p, w, NetMeta{});
  auto b = dedupe_points(q, w, NetMeta{});
  CHECK(a.points() == b.points());
}

TEST_CASE("sampled estimator is unbiased against full enumeration") {
  auto gens = sample_generator_set(2, 2, 21);
  const UnitVector x0 = UnitVector::north_pole(2);
  auto full = enumerate_net(gens, 3, x0);
  auto mean_of = [](const SphericalNet& net, auto f) {
    double s = 0;
    for (std::size_t i = 0; i < net.size(); ++i) s += net.multiplicity(i) * f(net.point(i));
    return s / static_cast<double>(net.total_weight());
  };
  Rng rng(77);
  const std::uint64_t m = 10'000;
  auto sampled = sample_words_net(gens, 3, x0, m, rng);
  CHECK(sampled.total_weight() == m);
  int within = 0;
  for (int j = 0; j < 3; ++j) {
    auto f = [j](const auto& x) { return x[j]; };
    double mu = mean_of(full, f);
    double var = mean_of(full, [&](const auto& x) { return (x[j] - mu) * (x[j] - mu); });
    double se = std::sqrt(var / m);
    if (std::abs(mean_of(sampled, f) - mu) <= 3 * se + 1e-15) ++within;
  }
  CHECK(within == 3);

  Rng r1(5), r2(5);
  auto s1 = sample_words_net(gens, 4, x0, 500, r1);
  auto s2 = sample_words_net(gens, 4, x0, 500, r2);
  CHECK(s1.points() == s2.points());
  CHECK(s1.multiplicities() == s2.multiplicities());
}

TEST_CASE("net validation") {
  Eigen::MatrixXd p(3, 1);
  p.col(0) = Eigen::Vector3d(0, 0, 2);
  CHECK_THROWS_AS(SphericalNet(p, {1}, NetMeta{}), DomainError);
  p.col(0) = Eigen::Vector3d(0, 0, 1);
  CHECK_THROWS_AS(SphericalNet(p, {0}, NetMeta{}), DomainError);
  CHECK_THROWS_AS(SphericalNet(p, {1, 1}, NetMeta{}), DimensionError);
  CHECK(parse_net_mode(to_string(NetMode::kSampled)) == NetMode::kSampled);
  CHECK_THROWS(parse_net_mode("partial"));
}
