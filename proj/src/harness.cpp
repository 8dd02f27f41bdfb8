#include "divex/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace divex {

namespace {

double first_goal_d(const ExperimentConfig& cfg) {
  for (const auto& s : cfg.strategies)
    if (s.type == "rgb") return s.d;
  return std::numeric_limits<double>::quiet_NaN();
}

void finalize_outcome(SelectorOutcome& o) {
  const std::size_t n = o.final_coverages.size();
  if (n == 0) throw std::invalid_argument("summary: no repetitions");
  double sum = 0.0;
  for (double v : o.final_coverages) sum += v;
  o.mean = sum / static_cast<double>(n);
  if (n < 2) {
    o.stddev = 0.0;
    o.degenerate = true;
    return;
  }
  double ss = 0.0;
  for (double v : o.final_coverages) {
    const double dlt = v - o.mean;
    ss += dlt * dlt;
  }
  o.stddev = std::sqrt(ss / static_cast<double>(n - 1));
}

SelectorOutcome measure_selector(const ExperimentConfig& cfg,
                                 std::string label, double p, double d,
                                 std::uint64_t selector_index) {
  SelectorOutcome o;
  o.selector = std::move(label);
  o.p = p;
  o.d = d;
  o.final_coverages.reserve(static_cast<std::size_t>(cfg.repetitions));
  for (int r = 0; r < cfg.repetitions; ++r) {
    const RunRecord rec = run_episode(
        cfg, episode_seed(cfg.master_seed, selector_index,
                          static_cast<std::uint64_t>(r)));
    o.final_coverages.push_back(rec.final_coverage());
  }
  finalize_outcome(o);
  return o;
}

}  // namespace

void ExperimentConfig::validate() const {
  arm.validate();
  if (strategies.empty())
    throw std::invalid_argument("config: at least one strategy required");
  for (const auto& s : strategies) {
    if (s.type == "rmb") continue;
    if (s.type != "rgb")
      throw std::invalid_argument("config: unknown strategy type '" + s.type +
                                  "'");
    const RgbConfig rc{s.d, s.goal_bounds};
    rc.validate();
    if (s.goal_bounds.dim() != 2)
      throw std::invalid_argument("config: goal bounds must be planar");
  }

  // the credit ledger runs under every selector, so its parameters must be
  // sound regardless of the selector type
  AdaptConfig credit_cfg = selector.adapt;
  credit_cfg.tau = eval_tau;
  credit_cfg.validate();

  if (selector.type == "pure") {
    if (selector.pure_strategy >= strategies.size())
      throw std::invalid_argument(
          "config: pure selector references a missing strategy");
  } else if (selector.type == "mixture") {
    if (!(selector.p >= 0.0 && selector.p <= 1.0))
      throw std::invalid_argument("config: mixture p must lie in [0, 1]");
    if (strategies.size() != 2)
      throw std::invalid_argument(
          "config: mixture needs exactly two strategies");
  } else if (selector.type != "adapt") {
    throw std::invalid_argument("config: unknown selector type '" +
                                selector.type + "'");
  }

  if (n_steps < 1) throw std::invalid_argument("config: n_steps must be >= 1");
  if (!(eval_tau > 0.0))
    throw std::invalid_argument("config: eval_tau must be > 0");
  if (repetitions < 1)
    throw std::invalid_argument("config: repetitions must be >= 1");
  if (coverage_bounds && coverage_bounds->dim() != 2)
    throw std::invalid_argument("config: coverage bounds must be planar");
  coverage_config().validate();
}

double ExperimentConfig::resolved_cell_size() const {
  return cell_size ? *cell_size : eval_tau / 10.0;
}

Box ExperimentConfig::resolved_coverage_bounds() const {
  if (coverage_bounds) return *coverage_bounds;
  return Box::centered(arm.reach() + 2.5 * eval_tau, 2);
}

CoverageConfig ExperimentConfig::coverage_config() const {
  return {eval_tau, resolved_coverage_bounds(), resolved_cell_size()};
}

ExperimentConfig default_experiment() {
  ExperimentConfig cfg;
  cfg.strategies = {StrategyConfig{"rmb"}, StrategyConfig{"rgb"}};
  return cfg;
}

std::vector<std::string> strategy_names(const ExperimentConfig& cfg) {
  std::vector<std::string> names;
  names.reserve(cfg.strategies.size());
  std::map<std::string, int> seen;
  for (const auto& s : cfg.strategies) {
    const int k = ++seen[s.type];
    names.push_back(k == 1 ? s.type : s.type + "_" + std::to_string(k));
  }
  return names;
}

StrategyRoster build_roster(const ExperimentConfig& cfg) {
  cfg.validate();
  const MotorSpace space = cfg.arm.motor_space();
  const auto names = strategy_names(cfg);
  StrategyRoster roster;
  roster.reserve(cfg.strategies.size());
  for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
    const auto& s = cfg.strategies[i];
    if (s.type == "rmb")
      roster.push_back(std::make_unique<RandomMotorBabbling>(space, names[i]));
    else
      roster.push_back(std::make_unique<RandomGoalBabbling>(
          space, RgbConfig{s.d, s.goal_bounds}, names[i]));
  }
  return roster;
}

std::unique_ptr<StrategySelector> build_selector(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.selector.type == "adapt")
    return std::make_unique<AdaptSelector>(cfg.selector.adapt.alpha);
  if (cfg.selector.type == "pure")
    return std::make_unique<PureSelector>(cfg.selector.pure_strategy);
  // mixture: p belongs to the motor-babbling slot
  std::size_t motor = 0;
  for (std::size_t i = 0; i < cfg.strategies.size(); ++i)
    if (cfg.strategies[i].type == "rmb") {
      motor = i;
      break;
    }
  const std::size_t goal = motor == 0 ? 1 : 0;
  return std::make_unique<MixtureSelector>(cfg.selector.p, motor, goal);
}

SelectionChoice PureSelector::choose(std::span<const double> diversities,
                                     Rng&) {
  if (index_ >= diversities.size())
    throw std::invalid_argument("pure: strategy index out of range");
  return {index_, false};
}

MixtureSelector::MixtureSelector(double p, std::size_t motor_index,
                                 std::size_t goal_index)
    : p_(p), motor_index_(motor_index), goal_index_(goal_index) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mixture: p must lie in [0, 1]");
  if (motor_index == goal_index)
    throw std::invalid_argument("mixture: the two slots must differ");
}

SelectionChoice MixtureSelector::choose(std::span<const double> diversities,
                                        Rng& rng) {
  if (motor_index_ >= diversities.size() ||
      goal_index_ >= diversities.size())
    throw std::invalid_argument("mixture: strategy index out of range");
  const double u = rng.uniform();
  return {u < p_ ? motor_index_ : goal_index_, true};
}

double RunRecord::final_coverage() const {
  return steps.empty() ? 0.0 : steps.back().cumulative_coverage;
}

std::uint64_t episode_seed(std::uint64_t master_seed,
                           std::uint64_t selector_index,
                           std::uint64_t repetition) {
  return mix64(master_seed, selector_index, repetition);
}

RunRecord run_episode(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const Environment env = make_arm_environment(cfg.arm);
  const StrategyRoster roster = build_roster(cfg);
  const auto selector = build_selector(cfg);

  CoverageGrid grid(cfg.coverage_config());
  ObservationStore store(env.sensory_dim);
  AdaptConfig credit_cfg = cfg.selector.adapt;
  credit_cfg.tau = cfg.eval_tau;
  CreditLedger credits(roster.size(), credit_cfg, env.sensory_dim);

  Rng selection_rng(mix64(seed, 1));
  Rng proposal_rng(mix64(seed, 2));

  RunRecord rec;
  rec.seed = seed;
  rec.strategy_names = strategy_names(cfg);
  rec.steps.reserve(static_cast<std::size_t>(cfg.n_steps));
  for (int t = 0; t < cfg.n_steps; ++t)
    rec.steps.push_back(adapt_step(env, roster, store, grid, credits,
                                   *selector, selection_rng, proposal_rng, t));
  return rec;
}

double usage_fraction(std::span<const StepLog> steps, int strategy, int t_lo,
                      int t_hi) {
  const int n = static_cast<int>(steps.size());
  const int lo = std::max(0, t_lo);
  const int hi = std::min(n, t_hi);
  if (lo >= hi) throw std::invalid_argument("usage: empty step range");
  int hits = 0;
  for (int i = lo; i < hi; ++i)
    if (steps[static_cast<std::size_t>(i)].chosen == strategy) ++hits;
  return static_cast<double>(hits) / static_cast<double>(hi - lo);
}

CurveSet compute_curves(std::span<const RunRecord> runs,
                        std::size_t n_strategies, int half_window) {
  if (runs.empty()) throw std::invalid_argument("curves: no runs");
  if (n_strategies == 0) throw std::invalid_argument("curves: no strategies");
  if (half_window < 0)
    throw std::invalid_argument("curves: negative half window");
  const std::size_t n = runs[0].steps.size();
  if (n == 0) throw std::invalid_argument("curves: empty runs");
  for (const auto& r : runs)
    if (r.steps.size() != n)
      throw std::invalid_argument("curves: runs differ in length");

  CurveSet cs;
  cs.strategy_names = runs[0].strategy_names;
  const double inv_runs = 1.0 / static_cast<double>(runs.size());

  // selection counts stay integers until the final division so the usage
  // fractions at any t sum to 1 up to a couple of ulp
  std::vector<std::vector<long long>> counts(
      n_strategies, std::vector<long long>(n, 0));
  cs.diversity.assign(n_strategies, std::vector<double>(n, 0.0));
  cs.coverage_mean.assign(n, 0.0);
  cs.coverage_std.assign(n, 0.0);

  for (const auto& r : runs)
    for (std::size_t t = 0; t < n; ++t) {
      const StepLog& s = r.steps[t];
      if (s.chosen < 0 || static_cast<std::size_t>(s.chosen) >= n_strategies)
        throw std::invalid_argument("curves: chosen strategy out of range");
      if (s.per_strategy_diversity.size() != n_strategies)
        throw std::invalid_argument(
            "curves: missing per-strategy diversities");
      counts[static_cast<std::size_t>(s.chosen)][t] += 1;
      for (std::size_t j = 0; j < n_strategies; ++j)
        cs.diversity[j][t] += s.per_strategy_diversity[j];
      cs.coverage_mean[t] += s.cumulative_coverage;
    }

  for (std::size_t j = 0; j < n_strategies; ++j)
    for (std::size_t t = 0; t < n; ++t) cs.diversity[j][t] *= inv_runs;
  for (std::size_t t = 0; t < n; ++t) cs.coverage_mean[t] *= inv_runs;

  if (runs.size() >= 2) {
    for (const auto& r : runs)
      for (std::size_t t = 0; t < n; ++t) {
        const double dlt =
            r.steps[t].cumulative_coverage - cs.coverage_mean[t];
        cs.coverage_std[t] += dlt * dlt;
      }
    for (std::size_t t = 0; t < n; ++t)
      cs.coverage_std[t] =
          std::sqrt(cs.coverage_std[t] / static_cast<double>(runs.size() - 1));
  }

  // centered moving average over [t - hw, t + hw), truncated at the ends;
  // integer prefix sums keep the window totals exact
  cs.usage.assign(n_strategies, std::vector<double>(n, 0.0));
  const auto hw = static_cast<std::ptrdiff_t>(half_window);
  for (std::size_t j = 0; j < n_strategies; ++j) {
    std::vector<long long> prefix(n + 1, 0);
    for (std::size_t t = 0; t < n; ++t)
      prefix[t + 1] = prefix[t] + counts[j][t];
    for (std::size_t t = 0; t < n; ++t) {
      const auto ti = static_cast<std::ptrdiff_t>(t);
      const auto lo =
          static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, ti - hw));
      const auto hi = std::min(
          n, static_cast<std::size_t>(std::max(ti + hw, ti + 1)));
      cs.usage[j][t] =
          static_cast<double>(prefix[hi] - prefix[lo]) /
          (static_cast<double>(hi - lo) * static_cast<double>(runs.size()));
    }
  }
  return cs;
}

SummaryStats sweep(const ExperimentConfig& base, const SweepSpec& spec) {
  ExperimentConfig cfg = base;
  if (spec.repetitions > 0) cfg.repetitions = spec.repetitions;
  cfg.validate();
  if (!spec.include_adapt && spec.p_grid.empty())
    throw std::invalid_argument("sweep: nothing to run");
  for (double p : spec.p_grid)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("sweep: p values must lie in [0, 1]");
  for (double d : spec.d_values)
    if (!(d >= 0.0 && d <= 1.0))
      throw std::invalid_argument("sweep: d values must lie in [0, 1]");

  std::vector<double> ds = spec.d_values;
  if (ds.empty()) ds.push_back(first_goal_d(cfg));

  SummaryStats stats;
  std::uint64_t selector_index = 0;
  for (double d : ds) {
    ExperimentConfig dcfg = cfg;
    if (!std::isnan(d))
      for (auto& s : dcfg.strategies)
        if (s.type == "rgb") s.d = d;
    const double d_label = first_goal_d(dcfg);
    for (double p : spec.p_grid) {
      ExperimentConfig e = dcfg;
      e.selector.type = "mixture";
      e.selector.p = p;
      stats.outcomes.push_back(
          measure_selector(e, "mixture", p, d_label, selector_index++));
    }
    if (spec.include_adapt) {
      ExperimentConfig e = dcfg;
      e.selector.type = "adapt";
      stats.outcomes.push_back(measure_selector(
          e, "adapt", std::numeric_limits<double>::quiet_NaN(), d_label,
          selector_index++));
    }
  }
  return stats;
}

}  // namespace divex
