#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spherenet/analysis.hpp"
#include "spherenet/error.hpp"
#include "spherenet/io.hpp"
#include "spherenet/netgen.hpp"

using namespace spherenet;

namespace {

SphericalNet small_net(int n = 2) {
  auto gens = sample_generator_set(n, 2, 12);
  return enumerate_net(gens, 3, UnitVector::north_pole(n));
}

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_net(in);
  } catch (const FormatError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("net file round trip") {
  auto net = small_net();
  std::stringstream s;
  write_net(s, net);
  auto back = read_net(s);
  REQUIRE(back.size() == net.size());
  CHECK(back.multiplicities() == net.multiplicities());
  CHECK((back.points() - net.points()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(back.meta().k == 2);
  CHECK(back.meta().l == 3);
  CHECK(back.meta().seed == 12);
  CHECK(back.meta().mode == NetMode::kFull);

  std::istringstream first(s.str());
  std::string l1, l2;
  std::getline(first, l1);
  std::getline(first, l2);
  CHECK(l1 == "SPHNET 1");
  CHECK(l2.rfind("n=2 count=", 0) == 0);
}

TEST_CASE("malformed net files report line numbers") {
  CHECK(error_line("") == 1);
  CHECK(error_line("SPHNET 2\n") == 1);
  CHECK(error_line("SPHNET 1\nn=2 count=1 mode=full seed=0 k=1\n") == 2);
  CHECK(error_line("SPHNET 1\nn=2 count=2 mode=full seed=0 k=1 l=0\n0 0 1 1\n") == 4);
  CHECK(error_line("SPHNET 1\nn=2 count=1 mode=full seed=0 k=1 l=0\n0 0 2 1\n") == 3);
  CHECK(error_line("SPHNET 1\nn=2 count=1 mode=full seed=0 k=1 l=0\n0 0 1\n") == 3);
  CHECK(error_line("SPHNET 1\nn=2 count=1 mode=full seed=0 k=1 l=0\n0 0 1 0\n") == 3);
  CHECK(error_line("SPHNET 1\nn=2 count=1 mode=odd seed=0 k=1 l=0\n0 0 1 1\n") == 2);
  CHECK(error_line("SPHNET 1\nn=2 count=1 mode=full seed=0 k=1 l=0\n0 0 1 1\n0 0 1 1\n") == 4);
}

TEST_CASE("save and load through files") {
  auto dir = std::filesystem::temp_directory_path() / "spherenet_io_test";
  std::filesystem::create_directories(dir);
  auto net = small_net(3);
  save_net(dir / "a.net", net);
  auto back = load_net(dir / "a.net");
  CHECK(back.points() == net.points());
  CHECK_THROWS(load_net(dir / "missing.net"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("su2 text round trip") {
  auto mats = su2_export(small_net(3));
  std::stringstream s;
  write_su2(s, mats);
  auto back = read_su2(s);
  REQUIRE(back.size() == mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i) CHECK((back[i] - mats[i]).cwiseAbs().maxCoeff() <= 1e-15);
  std::string first;
  std::istringstream again(s.str());
  std::getline(again, first);
  std::istringstream fields(first);
  int count = 0;
  double v;
  while (fields >> v) ++count;
  CHECK(count == 8);
}

TEST_CASE("report json") {
  auto net = small_net();
  AnalyzeOptions opt;
  opt.probes = 500;
  opt.max_degree = 2;
  auto report = analyze(net, opt);
  auto j = nlohmann::json::parse(report_to_json(report, {"x.net", 500, 2, 0}));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["inputs"]["probes"] == 500);
  CHECK(j["net"]["total_weight"] == 64);
  CHECK(j["discrepancy"].size() == 2);
  CHECK(j["covering_radius"]["estimate"].is_number());
  report.w1_lower_bound = std::nan("");
  CHECK_THROWS_AS(report_to_json(report, {}), DomainError);
}
