#pragma once

#include <memory>
#include <span>
#include <vector>

#include "divex/coverage.hpp"
#include "divex/environment.hpp"
#include "divex/strategies.hpp"

namespace divex {

struct AdaptConfig {
  double alpha = 0.1;        // share of uniformly random picks, in (0, 1]
  int window = 20;           // w: diversity values averaged per strategy
  int fictitious_count = 1;  // k: synthetic full-ball entries while the window fills
  double tau = 0.02;         // coverage radius, shared with the grid

  void validate() const;
};

// Rolling record of the diversity values one strategy has produced: the last
// `window` values are retained (oldest first) along with the lifetime count.
class StrategyCredit {
 public:
  StrategyCredit(std::size_t strategy_id, int window);

  std::size_t strategy_id() const { return id_; }
  std::size_t total_recorded() const { return total_; }
  std::span<const double> recent() const { return history_; }

  void record(double diversity);

 private:
  std::size_t id_;
  std::size_t window_;
  std::size_t total_ = 0;
  std::vector<double> history_;
};

// Windowed diversity of a strategy: the mean of its last w recorded values,
// padded with min(k, w - n_j) fictitious entries worth a full ball while
// fewer than w real values exist. A strategy never sampled scores exactly
// one full ball, which guarantees it gets tried.
double strategy_diversity(const StrategyCredit& credit, const AdaptConfig& cfg,
                          double full_ball_value);

struct SelectionChoice {
  std::size_t index = 0;
  bool was_random = false;  // true iff the alpha branch made the pick
};

// With probability alpha, a uniform pick; otherwise proportional to the
// weights via cumulative-weight inversion of a single uniform variate
// (uniform again when every weight is zero). Consumes exactly two variates.
SelectionChoice select_strategy(std::span<const double> diversities,
                                double alpha, Rng& rng);

// Per-strategy credit bookkeeping for one run. The fictitious entry value is
// the measure of one full tau-ball in the run's sensory dimension.
class CreditLedger {
 public:
  CreditLedger(std::size_t n_strategies, AdaptConfig cfg,
               std::size_t sensory_dim);

  std::size_t strategy_count() const { return credits_.size(); }
  const AdaptConfig& config() const { return cfg_; }
  double fictitious_value() const { return full_ball_; }
  const StrategyCredit& credit(std::size_t j) const { return credits_[j]; }

  void record(std::size_t strategy, double diversity);
  double diversity(std::size_t strategy) const;
  std::vector<double> diversities() const;

 private:
  AdaptConfig cfg_;
  double full_ball_;
  std::vector<StrategyCredit> credits_;
};

// Pluggable rule deciding which strategy runs the next trial.
class StrategySelector {
 public:
  virtual ~StrategySelector() = default;
  virtual SelectionChoice choose(std::span<const double> diversities,
                                 Rng& rng) = 0;
};

// The adaptive selector: alpha-random, otherwise diversity-proportional.
class AdaptSelector final : public StrategySelector {
 public:
  explicit AdaptSelector(double alpha);
  SelectionChoice choose(std::span<const double> diversities,
                         Rng& rng) override;

 private:
  double alpha_;
};

struct StepLog {
  int t = 0;
  int chosen = 0;
  bool was_random = false;
  MotorCommand command;
  SensoryPoint effect;
  double diversity = 0.0;            // area this step's effect newly covered
  double cumulative_coverage = 0.0;  // grid total after the step
  std::vector<double> per_strategy_diversity;  // values the selection saw
};

using StrategyRoster = std::vector<std::unique_ptr<Strategy>>;

// One exploration step: select a strategy, let it propose from the shared
// store, evaluate, score the effect against every effect seen so far, credit
// the increment to the chosen strategy only, then append the observation to
// the shared store. Selection draws from selection_rng and proposals from
// proposal_rng, so the selector choice never shifts the strategies'
// random sequences.
StepLog adapt_step(const Environment& env, const StrategyRoster& strategies,
                   ObservationStore& store, CoverageGrid& grid,
                   CreditLedger& credits, StrategySelector& selector,
                   Rng& selection_rng, Rng& proposal_rng, int t);

}  // namespace divex
