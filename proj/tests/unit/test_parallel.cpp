#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "spherenet/parallel.hpp"

using namespace spherenet;

TEST_CASE("parallel helpers visit every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for_each(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) CHECK(h.load() == 1);

  std::vector<int> seen(777, 0);
  parallel_chunks(seen.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ++seen[i];
  });
  for (int s : seen) CHECK(s == 1);
  parallel_chunks(0, [](std::size_t, std::size_t) { FAIL("empty range ran"); });
}

TEST_CASE("worker exceptions propagate") {
  CHECK_THROWS_AS(parallel_for_each(8, [](std::size_t i) { if (i == 5) throw std::runtime_error("x"); }), std::runtime_error);
}

TEST_CASE("thread count honors the environment") {
  ::setenv("SPHERENET_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  ::setenv("SPHERENET_THREADS", "zero", 1);
  CHECK(thread_count() >= 1);
  ::unsetenv("SPHERENET_THREADS");
  CHECK(thread_count() >= 1);
}
