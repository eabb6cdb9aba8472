#include "randfusion/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "randfusion/angles.hpp"
#include "randfusion/bounds.hpp"
#include "randfusion/error.hpp"
#include "randfusion/frame.hpp"
#include "randfusion/io.hpp"
#include "randfusion/montecarlo.hpp"

namespace randfusion::cli {

namespace {

constexpr std::size_t kTableCap = 64;

void require_dims(std::size_t n, std::size_t s, std::size_t k, std::size_t min_k) {
  if (s == 0 || s > n) {
    throw Error(ErrorKind::InvalidDims, "--subspace-dim must satisfy 1 <= s <= dim (got s=" +
                                            std::to_string(s) + ", dim=" + std::to_string(n) +
                                            ")");
  }
  if (k < min_k) {
    throw Error(ErrorKind::InvalidDims,
                "--count must be at least " + std::to_string(min_k) + " (got " +
                    std::to_string(k) + ")");
  }
}

struct SampleArgs {
  std::size_t n = 0, s = 0, k = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct AnalyzeArgs {
  std::string frame;
  std::string report;
  std::string angles_csv;
  bool full_table = false;
};

struct BoundsArgs {
  std::size_t n = 0, s = 0, k = 0;
  double delta = 0.0;
  std::optional<std::size_t> big_m;
};

struct MonteCarloArgs {
  std::string config;
  std::string out;
  std::size_t workers = 1;
};

struct WelchArgs {
  std::size_t n = 0, k = 0, s = 0;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  require_dims(a.n, a.s, a.k, 1);
  ExperimentConfig c;
  c.n = a.n;
  c.s = a.s;
  c.k = a.k;
  c.master_seed = a.seed;
  const FusionFrame frame = sample_trial_frame(c, 0);
  io::save_frame(frame, a.out);
  out << a.out << '\n'
      << "dim=" << a.n << " subspace_dim=" << a.s << " count=" << a.k << " seed=" << a.seed
      << '\n';
  return 0;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const FusionFrame frame = io::load_frame(a.frame);
  io::json doc;
  doc["dim"] = frame.ambient_dim();
  doc["count"] = frame.size();
  std::vector<std::size_t> dims;
  for (const auto& w : frame.subspaces()) dims.push_back(w.dim());
  doc["subspace_dims"] = dims;
  doc["equidimensional"] = frame.is_equidimensional();
  doc["frame_bounds"] = io::frame_bounds_to_json(frame_bounds(frame));
  doc["angles"] = nullptr;
  doc["welch_bound"] = nullptr;
  if (frame.size() >= 2) {
    const AngleReport angles = angle_report(frame);
    doc["angles"] = io::angle_report_to_json(angles, a.full_table || frame.size() <= kTableCap);
    if (frame.is_equidimensional()) doc["welch_bound"] = angles.welch;
    if (!a.angles_csv.empty()) {
      std::ostringstream csv;
      io::write_angle_csv(csv, angles);
      io::write_text_file(a.angles_csv, csv.str());
    }
  } else if (!a.angles_csv.empty()) {
    throw Error(ErrorKind::TooFewSubspaces, "angle table needs at least two subspaces");
  }
  const std::string text = doc.dump(2) + "\n";
  if (a.report.empty()) {
    out << text;
  } else {
    io::write_text_file(a.report, text);
    out << a.report << '\n';
  }
  return 0;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  out << io::bound_set_to_json(compute_bound_set(a.n, a.s, a.k, a.delta, a.big_m)).dump(2) << '\n';
  return 0;
}

int cmd_montecarlo(const MonteCarloArgs& a, std::ostream& out) {
  if (a.workers == 0) throw Error(ErrorKind::ConfigInvalid, "--workers must be at least 1");
  const ExperimentConfig config = io::load_config(a.config);
  const bool want_csv =
      std::find(config.outputs.begin(), config.outputs.end(), "csv") != config.outputs.end();
  const bool want_json =
      std::find(config.outputs.begin(), config.outputs.end(), "json") != config.outputs.end();
  if (want_csv && a.out.empty()) {
    throw Error(ErrorKind::ConfigInvalid, "config requests csv output but --out is missing");
  }
  const ExperimentRun run = run_experiment(config, a.workers);
  if (want_csv) {
    std::ostringstream csv;
    io::write_trial_csv(csv, run.trials);
    io::write_text_file(a.out, csv.str());
  }
  if (want_json) out << io::aggregate_to_json(run.report).dump(2) << '\n';
  return 0;
}

int cmd_welch(const WelchArgs& a, std::ostream& out) {
  require_dims(a.n, a.s, a.k, 2);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", welch_bound(a.n, a.k, a.s));
  out << buf << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random fusion frames: sampling, analysis, bounds and Monte Carlo checks",
               "randfusion"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Sample K random s-dimensional subspaces of R^N");
  sample_cmd->add_option("--dim", sample.n, "Ambient dimension N")->required();
  sample_cmd->add_option("--subspace-dim", sample.s, "Subspace dimension s")->required();
  sample_cmd->add_option("--count", sample.k, "Number of subspaces K")->required();
  sample_cmd->add_option("--seed", sample.seed, "Master seed");
  sample_cmd->add_option("--out", sample.out, "Output frame JSON path")->required();

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Frame bounds and pairwise angles of a frame file");
  analyze_cmd->add_option("frame", analyze.frame, "Frame JSON path")->required();
  analyze_cmd->add_option("--report", analyze.report, "Write the JSON report here instead of stdout");
  analyze_cmd->add_option("--angles-csv", analyze.angles_csv, "Write the pair table as CSV");
  analyze_cmd->add_flag("--full-table", analyze.full_table, "Include the pair table for any K");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate every closed-form failure bound");
  bounds_cmd->add_option("--dim", bounds.n, "Ambient dimension N")->required();
  bounds_cmd->add_option("--subspace-dim", bounds.s, "Subspace dimension s")->required();
  bounds_cmd->add_option("--count", bounds.k, "Number of subspaces K")->required();
  bounds_cmd->add_option("--delta", bounds.delta, "Concentration parameter delta")->required();
  bounds_cmd->add_option("--big-m", bounds.big_m, "Total dimension M (default K*s)");

  MonteCarloArgs mc;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Run a seeded Monte Carlo experiment");
  mc_cmd->add_option("--config", mc.config, "Experiment config JSON")->required();
  mc_cmd->add_option("--out", mc.out, "Per-trial CSV path");
  mc_cmd->add_option("--workers", mc.workers, "Worker threads");

  WelchArgs welch;
  auto* welch_cmd = app.add_subcommand("welch", "Print the Welch-type floor s(Ks-N)/((K-1)N)");
  welch_cmd->add_option("--dim", welch.n, "Ambient dimension N")->required();
  welch_cmd->add_option("--count", welch.k, "Number of subspaces K")->required();
  welch_cmd->add_option("--subspace-dim", welch.s, "Subspace dimension s")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[Usage]: " << e.what() << '\n';
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return 1;
  }

  try {
    if (*sample_cmd) return cmd_sample(sample, out);
    if (*analyze_cmd) return cmd_analyze(analyze, out);
    if (*bounds_cmd) return cmd_bounds(bounds, out);
    if (*mc_cmd) return cmd_montecarlo(mc, out);
    if (*welch_cmd) return cmd_welch(welch, out);
  } catch (const Error& e) {
    err << "error[" << kind_name(e.kind()) << "]: " << e.what() << '\n';
    return is_validation_error(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error[Internal]: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace randfusion::cli
