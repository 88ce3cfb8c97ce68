#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spherenet/analysis.hpp"
#include "spherenet/netgen.hpp"

namespace spherenet {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

// NetFile text format:
//   SPHNET 1
//   n=<int> count=<int> mode=<full|sampled> seed=<uint64> k=<int> l=<int>
//   <n+1 coordinates, 17 significant digits> <multiplicity>     (count lines)
void write_net(std::ostream& out, const SphericalNet& net);
// FormatError carries the offending 1-based line number. The base point is not stored;
// loaded nets report the north pole.
SphericalNet read_net(std::istream& in);

void save_net(const std::filesystem::path& path, const SphericalNet& net);
SphericalNet load_net(const std::filesystem::path& path);

// Inputs echoed into the report.
struct ReportInputs {
  std::string net_path;
  std::uint64_t probes = 0;
  int max_degree = 0;
  std::uint64_t seed = 0;
};

// JSON object text; throws DomainError if any numeric field is not finite.
std::string report_to_json(const QualityReport& report, const ReportInputs& inputs);

// One line per matrix: re/im of entries (0,0) (0,1) (1,0) (1,1), 17 significant digits.
void write_su2(std::ostream& out, const std::vector<Eigen::Matrix2cd>& matrices);
std::vector<Eigen::Matrix2cd> read_su2(std::istream& in);

// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace spherenet
