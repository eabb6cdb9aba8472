#include "randfusion/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "randfusion/error.hpp"

namespace randfusion::io {

namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorKind::ParseError, message);
}

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::ConfigInvalid, message);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json bound_entry(double v) { return {{"value", number(v)}, {"vacuous", is_vacuous(v)}}; }

json stats_json(const SummaryStats& s) {
  return {{"mean", number(s.mean)}, {"stddev", number(s.stddev)}, {"median", number(s.median)}};
}

template <typename T>
std::optional<T> optional_field(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<T>();
}

std::size_t config_count(const json& doc, const char* key) {
  if (!doc.contains(key)) config_error(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    config_error(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

json frame_to_json(const FusionFrame& frame) {
  json subspaces = json::array();
  for (const auto& w : frame.subspaces()) {
    json vectors = json::array();
    for (std::size_t c = 0; c < w.dim(); ++c) vectors.push_back(w.basis().column(c));
    subspaces.push_back(std::move(vectors));
  }
  return {{"dim", frame.ambient_dim()}, {"weights", frame.weights()}, {"subspaces", subspaces}};
}

FusionFrame frame_from_json(const json& doc) {
  if (!doc.is_object()) parse_error("frame file must hold a JSON object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_unsigned() ||
      doc.at("dim").get<std::size_t>() == 0) {
    parse_error("frame field 'dim' must be a positive integer");
  }
  const std::size_t n = doc.at("dim").get<std::size_t>();
  if (!doc.contains("subspaces") || !doc.at("subspaces").is_array() ||
      doc.at("subspaces").empty()) {
    parse_error("frame field 'subspaces' must be a nonempty array");
  }
  const json& subs = doc.at("subspaces");
  std::vector<Subspace> subspaces;
  subspaces.reserve(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string where = "subspace " + std::to_string(i);
    const json& vectors = subs[i];
    if (!vectors.is_array() || vectors.empty()) parse_error(where + ": must be a nonempty array");
    if (vectors.size() > n) {
      throw Error(ErrorKind::InvalidDims, where + ": " + std::to_string(vectors.size()) +
                                              " basis vectors exceed dim " + std::to_string(n));
    }
    Matrix basis(n, vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c) {
      const json& vec = vectors[c];
      if (!vec.is_array() || vec.size() != n) {
        parse_error(where + ", vector " + std::to_string(c) + ": expected " + std::to_string(n) +
                    " numbers");
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (!vec[r].is_number()) parse_error(where + ": non-numeric entry");
        basis(r, c) = vec[r].get<double>();
      }
    }
    try {
      subspaces.emplace_back(std::move(basis));
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what());
    }
  }
  std::vector<double> weights;
  if (doc.contains("weights")) {
    const json& w = doc.at("weights");
    if (!w.is_array()) parse_error("frame field 'weights' must be an array");
    for (const auto& x : w) {
      if (!x.is_number()) parse_error("frame weights must be numbers");
      weights.push_back(x.get<double>());
    }
    if (weights.size() != subspaces.size()) {
      parse_error("frame has " + std::to_string(subspaces.size()) + " subspaces but " +
                  std::to_string(weights.size()) + " weights");
    }
  }
  return FusionFrame(std::move(subspaces), std::move(weights));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::IoError, "read failed for '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

FusionFrame load_frame(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return frame_from_json(doc);
}

void save_frame(const FusionFrame& frame, const std::filesystem::path& path) {
  write_text_file(path, frame_to_json(frame).dump(2) + "\n");
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) config_error("experiment config must be a JSON object");
  static const std::set<std::string> known{"dim",   "subspace_dim", "count",   "delta",
                                           "trials", "seed",        "weights", "outputs"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) config_error("unknown config field '" + key + "'");
  }
  ExperimentConfig c;
  try {
    c.n = config_count(doc, "dim");
    c.s = config_count(doc, "subspace_dim");
    c.k = config_count(doc, "count");
    c.trials = config_count(doc, "trials");
    if (!doc.contains("delta") || !doc.at("delta").is_number()) {
      config_error("field 'delta' must be a number");
    }
    c.delta = doc.at("delta").get<double>();
    if (doc.contains("seed")) {
      const json& seed = doc.at("seed");
      if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
        config_error("field 'seed' must be a nonnegative integer");
      }
      c.master_seed = doc.at("seed").get<std::uint64_t>();
    }
    c.weights = optional_field<std::vector<double>>(doc, "weights");
    if (auto outputs = optional_field<std::vector<std::string>>(doc, "outputs")) {
      c.outputs = *outputs;
    }
  } catch (const json::exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json doc = {{"dim", c.n},       {"subspace_dim", c.s},   {"count", c.k},
              {"delta", c.delta}, {"trials", c.trials},    {"seed", c.master_seed},
              {"outputs", c.outputs}};
  if (c.weights) doc["weights"] = *c.weights;
  return doc;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

json frame_bounds_to_json(const FrameBoundsReport& r) {
  return {{"lower", number(r.lower)},
          {"upper", number(r.upper)},
          {"tight_constant", number(r.tight_constant)},
          {"epsilon_tight", number(r.epsilon_tight)},
          {"rank_deficient", !std::isfinite(r.epsilon_tight)}};
}

json angle_report_to_json(const AngleReport& r, bool include_table) {
  json doc = {{"count", r.count()},
              {"normalized_min", number(r.normalized_min)},
              {"normalized_max", number(r.normalized_max)},
              {"normalized_mean", number(r.normalized_mean)},
              {"max_pair_value", number(r.max_pair_value)},
              {"welch", number(r.welch)}};
  if (include_table) {
    json table = json::array();
    for (std::size_t j = 0; j < r.count(); ++j) {
      const auto row = r.pair_values.row(j);
      table.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["pair_values"] = std::move(table);
  }
  return doc;
}

json bound_set_to_json(const BoundSet& b) {
  json doc;
  doc["params"] = {{"dim", b.params.n},
                   {"subspace_dim", b.params.s},
                   {"count", b.params.k},
                   {"big_m", b.params.m},
                   {"delta", b.params.delta}};
  doc["chi2_upper"] = bound_entry(b.chi2_upper);
  doc["chi2_lower"] = bound_entry(b.chi2_lower);
  doc["column_norms"] = bound_entry(b.column_norms);
  doc["net_cardinality"] = number(b.net_cardinality);
  doc["riesz_subset"] = bound_entry(b.riesz_subset);
  doc["riesz_partition"] = bound_entry(b.riesz_partition);
  doc["gaussian_frame"] = bound_entry(b.gaussian_frame);
  doc["tightness"] = {{"failure", bound_entry(b.tightness.failure)},
                      {"window", {number(b.tightness.lower), number(b.tightness.upper)}},
                      {"epsilon", number(b.tightness.epsilon)}};
  doc["beta"] = b.beta;
  doc["beta_lower"] = bound_entry(b.beta_lower);
  doc["beta_upper"] = bound_entry(b.beta_upper);
  doc["ratio_two_sided"] = bound_entry(b.ratio_two_sided);
  doc["proj_mass"] = bound_entry(b.proj_mass);
  if (b.pair) {
    doc["pair"] = {{"r1", bound_entry(b.pair->r1)},
                   {"r2", bound_entry(b.pair->r2)},
                   {"total", bound_entry(*b.pair_total)},
                   {"epsilon", number(b.pair->epsilon)},
                   {"window", {number(b.pair->window.lo), number(b.pair->window.hi)}}};
  } else {
    doc["pair"] = nullptr;
  }
  doc["all_pairs_total"] = b.all_pairs_total ? bound_entry(*b.all_pairs_total) : json(nullptr);
  if (b.regime) {
    doc["asymptotic_regime"] = {
        {"rhs", number(b.regime->rhs)},
        {"cond1", {{"holds", b.regime->cond1}, {"lhs", number(b.regime->lhs1)}}},
        {"cond2", {{"holds", b.regime->cond2}, {"lhs", number(b.regime->lhs2)}}}};
  } else {
    doc["asymptotic_regime"] = nullptr;
  }
  return doc;
}

json aggregate_to_json(const AggregateReport& r) {
  auto opt_number = [](const std::optional<double>& v) { return v ? number(*v) : json(nullptr); };
  auto opt_bool = [](const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); };
  return {{"config", config_to_json(r.config)},
          {"trials_completed", r.trials_completed},
          {"failed_trials", r.failed_trials},
          {"tightness_threshold", number(r.tightness_threshold)},
          {"window", {number(r.window.lo), number(r.window.hi)}},
          {"empirical_tightness_failure_rate", r.empirical_tightness_failure_rate},
          {"empirical_window_failure_rate", r.empirical_window_failure_rate},
          {"theoretical_tightness_failure", number(r.theoretical_tightness_failure)},
          {"theoretical_all_pairs_failure", opt_number(r.theoretical_all_pairs_failure)},
          {"tightness_vacuous", r.tightness_vacuous},
          {"all_pairs_vacuous", opt_bool(r.all_pairs_vacuous)},
          {"tightness_dominance", r.tightness_dominance},
          {"window_dominance", opt_bool(r.window_dominance)},
          {"welch_violations", r.welch_violations},
          {"stats",
           {{"epsilon_tight", stats_json(r.epsilon_tight)},
            {"frame_lower", stats_json(r.frame_lower)},
            {"frame_upper", stats_json(r.frame_upper)},
            {"hs_min", stats_json(r.hs_min)},
            {"hs_max", stats_json(r.hs_max)},
            {"hs_mean", stats_json(r.hs_mean)}}}};
}

json chi2_to_json(const Chi2Report& r) {
  return {{"dim", r.n},
          {"delta", r.delta},
          {"trials", r.trials},
          {"seed", r.seed},
          {"upper", {{"rate", r.upper_rate}, {"bound", number(r.upper_bound)}, {"dominance", r.upper_dominance}}},
          {"lower", {{"rate", r.lower_rate}, {"bound", number(r.lower_bound)}, {"dominance", r.lower_dominance}}}};
}

void write_trial_csv(std::ostream& out, const std::vector<TrialResult>& trials) {
  out << kTrialCsvHeader << '\n';
  for (const auto& t : trials) {
    if (!t.ok()) continue;
    out << t.trial_index << ',' << format_double(t.epsilon_tight) << ','
        << format_double(t.frame_lower) << ',' << format_double(t.frame_upper) << ','
        << format_double(t.hs_min) << ',' << format_double(t.hs_max) << ','
        << format_double(t.hs_mean) << ',' << (t.welch_violated ? 1 : 0) << ','
        << (t.window_pass ? 1 : 0) << '\n';
  }
}

void write_angle_csv(std::ostream& out, const AngleReport& report) {
  out << "j,l,tr,normalized\n";
  for (std::size_t j = 0; j < report.count(); ++j) {
    for (std::size_t l = j + 1; l < report.count(); ++l) {
      out << j << ',' << l << ',' << format_double(report.pair_values(j, l)) << ','
          << format_double(report.normalized(j, l)) << '\n';
    }
  }
}

}  // namespace randfusion::io
