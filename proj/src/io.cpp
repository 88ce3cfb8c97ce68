#include "spherenet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spherenet/error.hpp"

namespace spherenet {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Parses "key=value" tokens of the NetFile header.
std::string header_field(std::istringstream& in, const std::string& key, std::size_t line) {
  std::string token;
  if (!(in >> token)) throw FormatError("missing header field '" + key + "'", line);
  const auto eq = token.find('=');
  if (eq == std::string::npos || token.substr(0, eq) != key) {
    throw FormatError("expected header field '" + key + "=', found '" + token + "'", line);
  }
  return token.substr(eq + 1);
}

template <class T>
T parse_number(const std::string& text, const std::string& what, std::size_t line) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !in.eof()) throw FormatError("malformed " + what + " '" + text + "'", line);
  return value;
}

}  // namespace

void write_net(std::ostream& out, const SphericalNet& net) {
  const auto& meta = net.meta();
  out << "SPHNET 1\n";
  out << "n=" << net.dim() << " count=" << net.size() << " mode=" << to_string(meta.mode) << " seed=" << meta.seed
      << " k=" << meta.k << " l=" << meta.l << "\n";
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto p = net.point(i);
    for (Eigen::Index r = 0; r < p.size(); ++r) out << format_double(p[r]) << ' ';
    out << net.multiplicity(i) << '\n';
  }
}

SphericalNet read_net(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("empty net file", line_no);
  if (line != "SPHNET 1") throw FormatError("bad magic line '" + line + "', expected 'SPHNET 1'", line_no);

  ++line_no;
  if (!std::getline(in, line)) throw FormatError("missing header line", line_no);
  std::istringstream header(line);
  const int n = parse_number<int>(header_field(header, "n", line_no), "n", line_no);
  const auto count = parse_number<std::uint64_t>(header_field(header, "count", line_no), "count", line_no);
  const std::string mode = header_field(header, "mode", line_no);
  const auto seed = parse_number<std::uint64_t>(header_field(header, "seed", line_no), "seed", line_no);
  const int k = parse_number<int>(header_field(header, "k", line_no), "k", line_no);
  const int l = parse_number<int>(header_field(header, "l", line_no), "l", line_no);
  if (n < 1) throw FormatError("n must be >= 1", line_no);
  if (count == 0) throw FormatError("count must be >= 1", line_no);

  NetMeta meta;
  try {
    meta.mode = parse_net_mode(mode);
  } catch (const std::invalid_argument&) {
    throw FormatError("unknown mode '" + mode + "'", line_no);
  }
  meta.seed = seed;
  meta.k = k;
  meta.l = l;
  meta.x0 = Eigen::VectorXd::Zero(n + 1);
  meta.x0[n] = 1.0;

  Eigen::MatrixXd points(n + 1, static_cast<Eigen::Index>(count));
  std::vector<std::uint64_t> mult(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    ++line_no;
    if (!std::getline(in, line)) throw FormatError("expected " + std::to_string(count) + " point lines", line_no);
    std::istringstream row(line);
    std::string token;
    for (int r = 0; r <= n; ++r) {
      if (!(row >> token)) throw FormatError("point line has too few coordinates", line_no);
      points(r, static_cast<Eigen::Index>(i)) = parse_number<double>(token, "coordinate", line_no);
    }
    if (!(row >> token)) throw FormatError("point line is missing its multiplicity", line_no);
    mult[i] = parse_number<std::uint64_t>(token, "multiplicity", line_no);
    if (row >> token) throw FormatError("trailing data on point line", line_no);
    if (mult[i] == 0) throw FormatError("multiplicity must be positive", line_no);
    if (std::abs(points.col(static_cast<Eigen::Index>(i)).norm() - 1.0) > 1e-10) {
      throw FormatError("point is not unit-norm", line_no);
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw FormatError("unexpected trailing line", line_no);
  }
  return SphericalNet(std::move(points), std::move(mult), std::move(meta));
}

void save_net(const std::filesystem::path& path, const SphericalNet& net) {
  std::ostringstream out;
  write_net(out, net);
  write_file_atomic(path, out.str());
}

SphericalNet load_net(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open net file " + path.string());
  return read_net(in);
}

std::string report_to_json(const QualityReport& report, const ReportInputs& inputs) {
  using nlohmann::json;
  auto finite = [](double v, const std::string& field) {
    if (!std::isfinite(v)) throw DomainError("report field " + field + " is not finite");
    return v;
  };
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = "spherenet";
  j["tool_version"] = kToolVersion;
  j["inputs"] = {{"net", inputs.net_path}, {"probes", inputs.probes}, {"max_degree", inputs.max_degree},
                 {"seed", inputs.seed}};
  j["net"] = {{"n", report.dim},
              {"distinct_points", report.distinct_points},
              {"total_weight", report.total_weight},
              {"mode", to_string(report.meta.mode)},
              {"k", report.meta.k},
              {"l", report.meta.l},
              {"seed", report.meta.seed}};
  j["covering_radius"] = {{"estimate", finite(report.covering.radius, "covering_radius")},
                          {"probes", report.covering.probes},
                          {"kind", "probe_lower_estimate"}};
  json disc = json::object();
  for (const auto& [d, v] : report.discrepancy) disc[std::to_string(d)] = finite(v, "discrepancy");
  j["discrepancy"] = disc;
  json errs = json::object();
  for (const auto& [name, v] : report.integration_errors) errs[name] = finite(v, "integration_errors." + name);
  j["integration_errors"] = errs;
  j["w1_lower_bound"] = finite(report.w1_lower_bound, "w1_lower_bound");
  if (report.gap_estimates) {
    json gaps = json::object();
    for (const auto& [d, v] : *report.gap_estimates) gaps[std::to_string(d)] = finite(v, "gap_estimates");
    j["gap_estimates"] = gaps;
  }
  return j.dump(2) + "\n";
}

void write_su2(std::ostream& out, const std::vector<Eigen::Matrix2cd>& matrices) {
  for (const auto& u : matrices) {
    out << format_double(u(0, 0).real()) << ' ' << format_double(u(0, 0).imag()) << ' '
        << format_double(u(0, 1).real()) << ' ' << format_double(u(0, 1).imag()) << ' '
        << format_double(u(1, 0).real()) << ' ' << format_double(u(1, 0).imag()) << ' '
        << format_double(u(1, 1).real()) << ' ' << format_double(u(1, 1).imag()) << '\n';
  }
}

std::vector<Eigen::Matrix2cd> read_su2(std::istream& in) {
  std::vector<Eigen::Matrix2cd> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    double v[8];
    for (double& x : v) {
      if (!(row >> x)) throw FormatError("SU(2) line needs 8 numbers", line_no);
    }
    Eigen::Matrix2cd u;
    u << std::complex<double>(v[0], v[1]), std::complex<double>(v[2], v[3]), std::complex<double>(v[4], v[5]),
        std::complex<double>(v[6], v[7]);
    out.push_back(u);
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace spherenet
