#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divex/adapt.hpp"
#include "divex/coverage.hpp"
#include "divex/environment.hpp"
#include "divex/strategies.hpp"

namespace divex {

struct StrategyConfig {
  std::string type = "rmb";  // "rmb" or "rgb"
  // rgb only:
  double d = 0.05;
  Box goal_bounds = Box::centered(1.0, 2);
};

struct SelectorConfig {
  std::string type = "adapt";  // "adapt", "pure" or "mixture"
  AdaptConfig adapt;           // tau is replaced by eval_tau at run time
  std::size_t pure_strategy = 0;
  double p = 0.5;  // mixture: probability of picking the motor-babbling arm
};

struct ExperimentConfig {
  ArmSpec arm;
  std::vector<StrategyConfig> strategies;
  SelectorConfig selector;
  int n_steps = 5000;
  double eval_tau = 0.02;
  std::optional<double> cell_size;     // default: eval_tau / 10
  std::optional<Box> coverage_bounds;  // default: arm reach + 2.5 * eval_tau
  int repetitions = 25;
  std::uint64_t master_seed = 0;

  void validate() const;
  double resolved_cell_size() const;
  Box resolved_coverage_bounds() const;
  CoverageConfig coverage_config() const;
};

// The reference setup: 20-joint arm at +-150 deg, motor + goal babbling
// (d = 0.05), adaptive selector, 5000 steps, 25 repetitions, tau = 0.02.
ExperimentConfig default_experiment();

// JSON round-trip.  The document mirrors the struct field names; absent
// fields keep their defaults, unknown fields are rejected.
ExperimentConfig parse_experiment(const std::string& json_text);
ExperimentConfig load_experiment(const std::filesystem::path& file);
std::string experiment_to_json(const ExperimentConfig& cfg);
void save_experiment(const ExperimentConfig& cfg,
                     const std::filesystem::path& file);

// Display names per roster slot: the type, suffixed _2, _3, ... on repeats.
std::vector<std::string> strategy_names(const ExperimentConfig& cfg);
StrategyRoster build_roster(const ExperimentConfig& cfg);
std::unique_ptr<StrategySelector> build_selector(const ExperimentConfig& cfg);

class PureSelector final : public StrategySelector {
 public:
  explicit PureSelector(std::size_t index) : index_(index) {}
  SelectionChoice choose(std::span<const double> diversities,
                         Rng& rng) override;

 private:
  std::size_t index_;
};

// Coin-flips between two fixed roster slots.  Consumes exactly one selection
// variate per step no matter the outcome, so p = 1 replays the motor arm's
// proposal stream verbatim.
class MixtureSelector final : public StrategySelector {
 public:
  MixtureSelector(double p, std::size_t motor_index, std::size_t goal_index);
  SelectionChoice choose(std::span<const double> diversities,
                         Rng& rng) override;

 private:
  double p_;
  std::size_t motor_index_;
  std::size_t goal_index_;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<std::string> strategy_names;
  std::vector<StepLog> steps;

  double final_coverage() const;
};

// Every stream in an experiment descends from (master_seed, selector_index,
// repetition); a single `run` uses selector_index 0, a sweep numbers its
// selector configurations globally.
std::uint64_t episode_seed(std::uint64_t master_seed,
                           std::uint64_t selector_index,
                           std::uint64_t repetition);

RunRecord run_episode(const ExperimentConfig& cfg, std::uint64_t seed);

// Fraction of steps in [t_lo, min(t_hi, n)) whose chosen slot == strategy.
double usage_fraction(std::span<const StepLog> steps, int strategy, int t_lo,
                      int t_hi);

struct CurveSet {
  std::vector<std::string> strategy_names;
  // [strategy][t]: selection fraction averaged over runs, then smoothed over
  // a centered window (half_window steps each side, truncated at the ends).
  std::vector<std::vector<double>> usage;
  std::vector<std::vector<double>> diversity;  // [strategy][t], run average
  std::vector<double> coverage_mean;           // [t]
  std::vector<double> coverage_std;            // [t]
};

CurveSet compute_curves(std::span<const RunRecord> runs,
                        std::size_t n_strategies, int half_window = 50);

struct SelectorOutcome {
  std::string selector;
  double p = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> final_coverages;  // one per repetition
  double mean = 0.0;
  double stddev = 0.0;     // sample (n-1); 0 when degenerate
  bool degenerate = false;  // fewer than 2 repetitions
};

struct SummaryStats {
  std::vector<SelectorOutcome> outcomes;
  std::optional<CurveSet> curves;
};

struct SweepSpec {
  std::vector<double> d_values;  // empty: keep the config's goal-babbling d
  std::vector<double> p_grid;    // fixed mixtures to evaluate
  bool include_adapt = true;
  int repetitions = 0;  // > 0 overrides the config
};

// For each d: every fixed mixture in p_grid, then the adaptive selector.
SummaryStats sweep(const ExperimentConfig& base, const SweepSpec& spec);

enum class ReportFormat { csv, json, plotdata };
ReportFormat parse_report_format(const std::string& text);

void write_steps_csv(const RunRecord& run, const std::filesystem::path& file);
// Restores the CSV-resident StepLog fields; commands and per-strategy
// diversity estimates are left empty (see replay_diversities).
std::vector<StepLog> read_steps_csv(const std::filesystem::path& file);

// Recomputes each step's per-strategy diversity estimates from the logged
// increments by replaying the credit ledger.
void replay_diversities(std::vector<StepLog>& steps,
                        const ExperimentConfig& cfg);

struct SummaryRow {
  std::string selector;
  double p = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();
  int repetition = 0;
  double final_coverage = 0.0;
};

void write_summary_csv(const SummaryStats& stats,
                       const std::filesystem::path& file);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& file);
void write_summary_json(const SummaryStats& stats,
                        const std::filesystem::path& file);
void write_plotdata(const SummaryStats& stats,
                    const std::filesystem::path& dir);

void emit_report(const SummaryStats& stats, ReportFormat format,
                 const std::filesystem::path& dir);

// Drivers behind the CLI subcommands.
void run_and_emit(const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir, ReportFormat format);
void sweep_and_emit(const ExperimentConfig& base, const SweepSpec& spec,
                    const std::filesystem::path& out_dir);
void report_directory(const std::filesystem::path& in_dir,
                      const std::filesystem::path& out_dir);

}  // namespace divex
