#include "divex/adapt.hpp"

#include <algorithm>
#include <stdexcept>

namespace divex {

void AdaptConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("adapt: alpha must lie in (0, 1]");
  if (window < 1) throw std::invalid_argument("adapt: window must be >= 1");
  if (fictitious_count < 1)
    throw std::invalid_argument("adapt: fictitious_count must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("adapt: tau must be > 0");
}

StrategyCredit::StrategyCredit(std::size_t strategy_id, int window)
    : id_(strategy_id), window_(static_cast<std::size_t>(window)) {
  if (window < 1) throw std::invalid_argument("credit: window must be >= 1");
  history_.reserve(window_);
}

void StrategyCredit::record(double diversity) {
  if (diversity < 0.0)
    throw std::invalid_argument("credit: diversity must be >= 0");
  if (history_.size() == window_) history_.erase(history_.begin());
  history_.push_back(diversity);
  ++total_;
}

double strategy_diversity(const StrategyCredit& credit, const AdaptConfig& cfg,
                          double full_ball_value) {
  const auto w = static_cast<std::size_t>(cfg.window);
  const auto n = credit.total_recorded();
  const auto recent = credit.recent();

  std::size_t fictitious = 0;
  if (n < w)
    fictitious =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.fictitious_count),
                              w - n);

  double sum = static_cast<double>(fictitious) * full_ball_value;
  for (double v : recent) sum += v;
  return sum / static_cast<double>(fictitious + recent.size());
}

SelectionChoice select_strategy(std::span<const double> diversities,
                                double alpha, Rng& rng) {
  if (diversities.empty())
    throw std::invalid_argument("select: no strategies to choose from");
  const std::size_t q = diversities.size();

  // both variates are always consumed, keeping the stream advance
  // independent of the branch taken
  const double u_mode = rng.uniform();
  const double u_pick = rng.uniform();

  auto uniform_pick = [&](bool was_random) {
    auto i = static_cast<std::size_t>(u_pick * static_cast<double>(q));
    return SelectionChoice{i < q ? i : q - 1, was_random};
  };

  if (u_mode < alpha) return uniform_pick(true);

  double total = 0.0;
  for (double v : diversities) {
    if (v < 0.0) throw std::invalid_argument("select: negative diversity");
    total += v;
  }
  if (total <= 0.0) return uniform_pick(false);

  const double target = u_pick * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < q; ++j) {
    if (diversities[j] > 0.0) last_positive = j;
    cum += diversities[j];
    if (target < cum) return {j, false};
  }
  // rounding pushed the target past the last partial sum
  return {last_positive, false};
}

CreditLedger::CreditLedger(std::size_t n_strategies, AdaptConfig cfg,
                           std::size_t sensory_dim)
    : cfg_(cfg), full_ball_(ball_volume(sensory_dim, cfg.tau)) {
  cfg_.validate();
  if (n_strategies == 0)
    throw std::invalid_argument("ledger: needs at least one strategy");
  credits_.reserve(n_strategies);
  for (std::size_t j = 0; j < n_strategies; ++j)
    credits_.emplace_back(j, cfg_.window);
}

void CreditLedger::record(std::size_t strategy, double diversity) {
  credits_.at(strategy).record(diversity);
}

double CreditLedger::diversity(std::size_t strategy) const {
  return strategy_diversity(credits_.at(strategy), cfg_, full_ball_);
}

std::vector<double> CreditLedger::diversities() const {
  std::vector<double> out(credits_.size());
  for (std::size_t j = 0; j < credits_.size(); ++j)
    out[j] = strategy_diversity(credits_[j], cfg_, full_ball_);
  return out;
}

AdaptSelector::AdaptSelector(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("adapt: alpha must lie in (0, 1]");
}

SelectionChoice AdaptSelector::choose(std::span<const double> diversities,
                                      Rng& rng) {
  return select_strategy(diversities, alpha_, rng);
}

StepLog adapt_step(const Environment& env, const StrategyRoster& strategies,
                   ObservationStore& store, CoverageGrid& grid,
                   CreditLedger& credits, StrategySelector& selector,
                   Rng& selection_rng, Rng& proposal_rng, int t) {
  if (strategies.empty())
    throw std::invalid_argument("step: empty strategy roster");
  if (strategies.size() != credits.strategy_count())
    throw std::invalid_argument("step: roster/ledger size mismatch");

  StepLog log;
  log.t = t;
  log.per_strategy_diversity = credits.diversities();

  const SelectionChoice choice =
      selector.choose(log.per_strategy_diversity, selection_rng);
  log.chosen = static_cast<int>(choice.index);
  log.was_random = choice.was_random;

  log.command = strategies[choice.index]->propose(store, proposal_rng);
  log.effect = env.evaluate(log.command);
  log.diversity = grid.add_effect(log.effect);
  credits.record(choice.index, log.diversity);
  store.append({log.command, log.effect});
  log.cumulative_coverage = grid.total_coverage();
  return log;
}

}  // namespace divex
