#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string_view>

#include "divex/harness.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace divex {

namespace {

constexpr std::string_view kStepsHeader =
    "t,strategy,was_random,y0,y1,diversity,cumulative_coverage";
constexpr std::string_view kSummaryHeader =
    "selector,p,d,repetition,final_coverage";

// shortest round-trip decimal form; NaN becomes the empty field
std::string format_number(double v) {
  if (std::isnan(v)) return {};
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc{})
    throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view field, const char* what) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v{};
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::runtime_error(std::string("bad ") + what + " field '" +
                             std::string(field) + "'");
  return v;
}

long long parse_int(std::string_view field, const char* what) {
  long long v{};
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::runtime_error(std::string("bad ") + what + " field '" +
                             std::string(field) + "'");
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + file.string());
}

std::string steps_filename(int repetition) {
  std::array<char, 32> buf;
  std::snprintf(buf.data(), buf.size(), "steps_rep%03d.csv", repetition);
  return buf.data();
}

double first_goal_d(const ExperimentConfig& cfg) {
  for (const auto& s : cfg.strategies)
    if (s.type == "rgb") return s.d;
  return std::numeric_limits<double>::quiet_NaN();
}

SelectorOutcome summarize_run(const ExperimentConfig& cfg,
                              std::vector<double> finals) {
  SelectorOutcome o;
  if (cfg.selector.type == "pure")
    o.selector =
        "pure_" + strategy_names(cfg).at(cfg.selector.pure_strategy);
  else
    o.selector = cfg.selector.type;
  if (cfg.selector.type == "mixture") o.p = cfg.selector.p;
  o.d = first_goal_d(cfg);
  o.final_coverages = std::move(finals);

  const std::size_t n = o.final_coverages.size();
  if (n == 0) throw std::invalid_argument("summary: no repetitions");
  double sum = 0.0;
  for (double v : o.final_coverages) sum += v;
  o.mean = sum / static_cast<double>(n);
  if (n < 2) {
    o.degenerate = true;
  } else {
    double ss = 0.0;
    for (double v : o.final_coverages) {
      const double dlt = v - o.mean;
      ss += dlt * dlt;
    }
    o.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return o;
}

void write_curve(const fs::path& file, const std::vector<double>& values) {
  std::string text = "t,value\n";
  for (std::size_t t = 0; t < values.size(); ++t) {
    text += std::to_string(t);
    text += ',';
    text += format_number(values[t]);
    text += '\n';
  }
  write_text(file, text);
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  if (text == "plotdata") return ReportFormat::plotdata;
  throw std::invalid_argument("unknown report format '" + text + "'");
}

void write_steps_csv(const RunRecord& run, const fs::path& file) {
  std::string text(kStepsHeader);
  text += '\n';
  for (const StepLog& s : run.steps) {
    if (s.effect.dim() != 2)
      throw std::invalid_argument("steps csv: effects must be planar");
    text += std::to_string(s.t);
    text += ',';
    text += std::to_string(s.chosen);
    text += s.was_random ? ",1," : ",0,";
    text += format_number(s.effect[0]);
    text += ',';
    text += format_number(s.effect[1]);
    text += ',';
    text += format_number(s.diversity);
    text += ',';
    text += format_number(s.cumulative_coverage);
    text += '\n';
  }
  write_text(file, text);
}

std::vector<StepLog> read_steps_csv(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty steps file " + file.string());
  chomp(line);
  if (line != kStepsHeader)
    throw std::runtime_error("unexpected steps header in " + file.string());

  std::vector<StepLog> steps;
  while (std::getline(in, line)) {
    chomp(line);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 7)
      throw std::runtime_error("malformed steps row in " + file.string());
    StepLog s;
    s.t = static_cast<int>(parse_int(f[0], "t"));
    s.chosen = static_cast<int>(parse_int(f[1], "strategy"));
    s.was_random = parse_int(f[2], "was_random") != 0;
    s.effect = SensoryPoint{{parse_number(f[3], "y0"),
                             parse_number(f[4], "y1")}};
    s.diversity = parse_number(f[5], "diversity");
    s.cumulative_coverage = parse_number(f[6], "cumulative_coverage");
    steps.push_back(std::move(s));
  }
  return steps;
}

void replay_diversities(std::vector<StepLog>& steps,
                        const ExperimentConfig& cfg) {
  cfg.validate();
  AdaptConfig credit_cfg = cfg.selector.adapt;
  credit_cfg.tau = cfg.eval_tau;
  CreditLedger ledger(cfg.strategies.size(), credit_cfg,
                      make_arm_environment(cfg.arm).sensory_dim);
  for (StepLog& s : steps) {
    if (s.chosen < 0 ||
        static_cast<std::size_t>(s.chosen) >= cfg.strategies.size())
      throw std::invalid_argument("replay: chosen strategy out of range");
    s.per_strategy_diversity = ledger.diversities();
    ledger.record(static_cast<std::size_t>(s.chosen), s.diversity);
  }
}

void write_summary_csv(const SummaryStats& stats, const fs::path& file) {
  std::string text(kSummaryHeader);
  text += '\n';
  for (const auto& o : stats.outcomes) {
    if (o.selector.find(',') != std::string::npos)
      throw std::invalid_argument("summary csv: selector label holds a comma");
    for (std::size_t r = 0; r < o.final_coverages.size(); ++r) {
      text += o.selector;
      text += ',';
      text += format_number(o.p);
      text += ',';
      text += format_number(o.d);
      text += ',';
      text += std::to_string(r);
      text += ',';
      text += format_number(o.final_coverages[r]);
      text += '\n';
    }
  }
  write_text(file, text);
}

std::vector<SummaryRow> read_summary_csv(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty summary file " + file.string());
  chomp(line);
  if (line != kSummaryHeader)
    throw std::runtime_error("unexpected summary header in " + file.string());

  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    chomp(line);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 5)
      throw std::runtime_error("malformed summary row in " + file.string());
    SummaryRow row;
    row.selector = std::string(f[0]);
    row.p = parse_number(f[1], "p");
    row.d = parse_number(f[2], "d");
    row.repetition = static_cast<int>(parse_int(f[3], "repetition"));
    row.final_coverage = parse_number(f[4], "final_coverage");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_json(const SummaryStats& stats, const fs::path& file) {
  nlohmann::json root;
  auto& arr = root["selectors"] = nlohmann::json::array();
  for (const auto& o : stats.outcomes) {
    nlohmann::json j;
    j["selector"] = o.selector;
    j["p"] = std::isnan(o.p) ? nlohmann::json() : nlohmann::json(o.p);
    j["d"] = std::isnan(o.d) ? nlohmann::json() : nlohmann::json(o.d);
    j["mean_final_coverage"] = o.mean;
    j["std_final_coverage"] = o.stddev;
    j["degenerate"] = o.degenerate;
    j["final_coverages"] = o.final_coverages;
    arr.push_back(std::move(j));
  }
  write_text(file, root.dump(2) + "\n");
}

void write_plotdata(const SummaryStats& stats, const fs::path& dir) {
  if (!stats.curves)
    throw std::invalid_argument("plotdata: no curve data to emit");
  const CurveSet& cs = *stats.curves;
  fs::create_directories(dir);

  std::string spread = "t,mean,std\n";
  for (std::size_t t = 0; t < cs.coverage_mean.size(); ++t) {
    spread += std::to_string(t);
    spread += ',';
    spread += format_number(cs.coverage_mean[t]);
    spread += ',';
    spread += format_number(cs.coverage_std[t]);
    spread += '\n';
  }
  write_text(dir / "spread.csv", spread);

  for (std::size_t j = 0; j < cs.usage.size(); ++j) {
    const std::string name =
        j < cs.strategy_names.size() ? cs.strategy_names[j]
                                     : std::to_string(j);
    const std::string tag = std::to_string(j) + "_" + name;
    write_curve(dir / ("usage_" + tag + ".csv"), cs.usage[j]);
    write_curve(dir / ("diversity_" + tag + ".csv"), cs.diversity[j]);
  }
}

void emit_report(const SummaryStats& stats, ReportFormat format,
                 const fs::path& dir) {
  fs::create_directories(dir);
  switch (format) {
    case ReportFormat::csv:
      write_summary_csv(stats, dir / "summary.csv");
      break;
    case ReportFormat::json:
      write_summary_json(stats, dir / "summary.json");
      break;
    case ReportFormat::plotdata:
      write_plotdata(stats, dir / "plotdata");
      break;
  }
}

void run_and_emit(const ExperimentConfig& cfg, const fs::path& out_dir,
                  ReportFormat format) {
  cfg.validate();
  fs::create_directories(out_dir);
  save_experiment(cfg, out_dir / "config.json");

  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.repetitions));
  std::vector<double> finals;
  for (int r = 0; r < cfg.repetitions; ++r) {
    records.push_back(run_episode(
        cfg,
        episode_seed(cfg.master_seed, 0, static_cast<std::uint64_t>(r))));
    write_steps_csv(records.back(), out_dir / steps_filename(r));
    finals.push_back(records.back().final_coverage());
  }

  SummaryStats stats;
  stats.outcomes.push_back(summarize_run(cfg, std::move(finals)));
  stats.curves = compute_curves(records, cfg.strategies.size());
  emit_report(stats, format, out_dir);
}

void sweep_and_emit(const ExperimentConfig& base, const SweepSpec& spec,
                    const fs::path& out_dir) {
  fs::create_directories(out_dir);
  save_experiment(base, out_dir / "config.json");
  const SummaryStats stats = sweep(base, spec);
  write_summary_csv(stats, out_dir / "summary.csv");
  write_summary_json(stats, out_dir / "summary.json");
}

void report_directory(const fs::path& in_dir, const fs::path& out_dir) {
  const ExperimentConfig cfg = load_experiment(in_dir / "config.json");

  std::vector<fs::path> step_files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.starts_with("steps_rep") && name.ends_with(".csv"))
      step_files.push_back(entry.path());
  }
  if (step_files.empty())
    throw std::runtime_error("no step files found in " + in_dir.string());
  std::sort(step_files.begin(), step_files.end());

  const auto names = strategy_names(cfg);
  std::vector<RunRecord> records;
  records.reserve(step_files.size());
  std::vector<double> finals;
  for (const auto& file : step_files) {
    RunRecord rec;
    rec.strategy_names = names;
    rec.steps = read_steps_csv(file);
    replay_diversities(rec.steps, cfg);
    finals.push_back(rec.final_coverage());
    records.push_back(std::move(rec));
  }

  SummaryStats stats;
  stats.outcomes.push_back(summarize_run(cfg, std::move(finals)));
  stats.curves = compute_curves(records, names.size());

  fs::create_directories(out_dir);
  write_summary_csv(stats, out_dir / "summary.csv");
  write_summary_json(stats, out_dir / "summary.json");
  write_plotdata(stats, out_dir / "plotdata");
}

}  // namespace divex
