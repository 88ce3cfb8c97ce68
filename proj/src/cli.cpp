#include "spherenet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "spherenet/analysis.hpp"
#include "spherenet/error.hpp"
#include "spherenet/geometry.hpp"
#include "spherenet/harmonics.hpp"
#include "spherenet/io.hpp"
#include "spherenet/netgen.hpp"
#include "spherenet/params.hpp"

namespace spherenet {

namespace {

struct ParamsFlags {
  int n = 0;
  double eps = 0.01;
  double delta = 0.01;
  double cn = 1.0;
  bool verbose = false;
};

struct GenerateFlags {
  int n = 0;
  int k = 0;
  int l = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t cap = kDefaultLeafCap;
  std::optional<std::uint64_t> sample;
};

struct AnalyzeFlags {
  std::string net;
  std::uint64_t probes = 100'000;
  int max_degree = 6;
  std::string report;
  std::uint64_t seed = 0;
};

struct GapFlags {
  int k = 0;
  std::uint64_t seed = 0;
  int max_degree = 6;
  std::optional<int> resolution;
  bool identity = false;
};

struct Su2Flags {
  std::string net;
  std::string out;
};

std::string fixed(double v, int digits = 10) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

int cmd_params(const ParamsFlags& f, std::ostream& out) {
  const TheoremParams p = theorem_params(f.n, f.eps, f.delta, f.cn);
  out << "n=" << p.n << "\n";
  out << "eps=" << fixed(p.eps) << "\n";
  out << "delta=" << fixed(p.delta) << "\n";
  out << "c_n=" << fixed(p.c_n) << "\n";
  out << "a_n=" << fixed(p.a_n) << "\n";
  out << "t=" << fixed(p.t) << "\n";
  out << "r=" << fixed(p.r) << "\n";
  out << "k=" << p.k << "\n";
  out << "l=" << p.l << "\n";
  out << "log2_word_count=" << fixed(p.log2_word_count) << "\n";
  if (f.verbose) {
    out << "k_unrounded=" << fixed(compute_k_real(p.n, p.eps, p.delta), 15) << "\n";
    out << "l_unrounded=" << fixed(compute_l_real(p.n, p.eps, p.r), 15) << "\n";
    out << "l_without_n=" << p.l_without_n << "\n";
  }
  return 0;
}

int cmd_generate(const GenerateFlags& f, std::ostream& out, std::ostream& err) {
  const GeneratorSet gens = sample_generator_set(f.n, f.k, f.seed);
  const UnitVector x0 = UnitVector::north_pole(f.n);
  SphericalNet net;
  if (word_count_within(f.k, f.l, f.cap)) {
    EnumerateOptions options;
    options.cap = f.cap;
    net = enumerate_net(gens, f.l, x0, options);
  } else if (f.sample) {
    // sampling draws from a stream independent of the generator stream
    Rng rng(f.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    net = sample_words_net(gens, f.l, x0, *f.sample, rng);
  } else {
    err << "error: full enumeration needs (2k)^l = 2^" << fixed(log2_word_count(f.k, f.l), 6)
        << " words, above the cap of " << f.cap << "; sampling is required (pass --sample <m>)\n";
    return 1;
  }
  std::ostream& summary = f.out.empty() ? err : out;
  if (f.out.empty()) {
    write_net(out, net);
  } else {
    save_net(f.out, net);
  }
  summary << "mode=" << to_string(net.meta().mode) << " distinct_points=" << net.size()
          << " total_weight=" << net.total_weight() << "\n";
  return 0;
}

int cmd_analyze(const AnalyzeFlags& f, std::ostream& out) {
  const SphericalNet net = load_net(f.net);
  AnalyzeOptions options;
  options.probes = f.probes;
  options.max_degree = f.max_degree;
  options.seed = f.seed;
  const QualityReport report = analyze(net, options);

  out << "n=" << report.dim << " distinct_points=" << report.distinct_points
      << " total_weight=" << report.total_weight << "\n";
  out << "covering_radius_estimate=" << fixed(report.covering.radius) << " probes=" << report.covering.probes << "\n";
  for (const auto& [d, v] : report.discrepancy) out << "discrepancy[" << d << "]=" << fixed(v) << "\n";
  out << "w1_lower_bound=" << fixed(report.w1_lower_bound) << "\n";
  double worst = 0.0;
  for (const auto& [name, v] : report.integration_errors) worst = std::max(worst, v);
  out << "max_integration_error=" << fixed(worst) << "\n";

  const std::string json = report_to_json(report, {f.net, f.probes, f.max_degree, f.seed});
  if (!f.report.empty()) write_file_atomic(f.report, json);
  return 0;
}

int cmd_gap(const GapFlags& f, std::ostream& out) {
  const int resolution = f.resolution.value_or(2 * f.max_degree + 2);
  GeneratorSet gens;
  if (f.identity) {
    std::vector<Rotation> ids(static_cast<std::size_t>(std::max(f.k, 1)), Rotation::identity(2));
    gens = make_generator_set(std::move(ids), f.seed);
  } else {
    gens = sample_generator_set(2, f.k, f.seed);
  }
  const auto gaps = averaging_gap(gens, f.max_degree, resolution);
  out << "k=" << gens.k() << " seed=" << f.seed << " resolution=" << resolution << "\n";
  for (const auto& [d, v] : gaps) out << "degree=" << d << " top_eigenvalue=" << fixed(v, 12) << "\n";
  return 0;
}

int cmd_su2(const Su2Flags& f, std::ostream& out) {
  const SphericalNet net = load_net(f.net);
  const auto matrices = su2_export(net);
  std::ostringstream text;
  write_su2(text, matrices);
  write_file_atomic(f.out, text.str());
  out << "matrices=" << matrices.size() << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-rotation equidistributed nets on spheres", "spherenet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ParamsFlags pf;
  auto* params = app.add_subcommand("params", "Evaluate the closed-form construction parameters");
  params->add_option("--n", pf.n, "sphere dimension")->required();
  params->add_option("--eps", pf.eps, "target scale, in (0, 1/(3n))")->capture_default_str();
  params->add_option("--delta", pf.delta, "failure probability, in (0, 1)")->capture_default_str();
  params->add_option("--cn", pf.cn, "dimension constant C_n")->capture_default_str();
  params->add_flag("--verbose", pf.verbose, "also print unrounded values and the alternate l");

  GenerateFlags gf;
  auto* generate = app.add_subcommand("generate", "Build the net x0 S^l and write a NetFile");
  generate->add_option("--n", gf.n, "sphere dimension")->required();
  generate->add_option("--k", gf.k, "number of random rotations")->required();
  generate->add_option("--l", gf.l, "word length")->required();
  generate->add_option("--seed", gf.seed, "generator seed")->capture_default_str();
  generate->add_option("--out", gf.out, "output NetFile (stdout when omitted)");
  generate->add_option("--cap", gf.cap, "maximum number of enumerated words")->capture_default_str();
  generate->add_option("--sample", gf.sample, "sample this many words when enumeration exceeds the cap");

  AnalyzeFlags af;
  auto* analyze_cmd = app.add_subcommand("analyze", "Measure the quality of a NetFile");
  analyze_cmd->add_option("--net", af.net, "input NetFile")->required();
  analyze_cmd->add_option("--probes", af.probes, "covering-radius probes")->capture_default_str();
  analyze_cmd->add_option("--max-degree", af.max_degree, "largest harmonic degree")->capture_default_str();
  analyze_cmd->add_option("--report", af.report, "write the JSON report here");
  analyze_cmd->add_option("--seed", af.seed, "probe seed")->capture_default_str();

  GapFlags gapf;
  auto* gap = app.add_subcommand("gap", "Top eigenvalues of the averaging operator on S^2");
  gap->add_option("--k", gapf.k, "number of random rotations")->required();
  gap->add_option("--seed", gapf.seed, "generator seed")->capture_default_str();
  gap->add_option("--max-degree", gapf.max_degree, "largest harmonic degree")->capture_default_str();
  gap->add_option("--resolution", gapf.resolution, "latitude nodes (default 2*max-degree+2)");
  // testing hook: replace the random generators by k identity rotations
  gap->add_flag("--identity-generators", gapf.identity)->group("");

  Su2Flags sf;
  auto* su2 = app.add_subcommand("su2", "Export a net on S^3 as SU(2) matrices");
  su2->add_option("--net", sf.net, "input NetFile (n = 3)")->required();
  su2->add_option("--out", sf.out, "output file, one matrix per line")->required();

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*params) return cmd_params(pf, out);
    if (*generate) return cmd_generate(gf, out, err);
    if (*analyze_cmd) return cmd_analyze(af, out);
    if (*gap) return cmd_gap(gapf, out);
    if (*su2) return cmd_su2(sf, out);
  } catch (const FormatError& e) {
    err << "error: line " << e.line() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace spherenet
