// Acceptance gate for the exploration-diversity library: nine checks, one
// PASS/FAIL line each, exit 0 iff every one holds.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "divex/harness.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace divex;

namespace {

int failures = 0;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ =
      std::chrono::steady_clock::now();
};

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

const double kPi = std::acos(-1.0);

// 1. single, duplicate and well-separated effects against closed forms
void criterion_1() {
  Stopwatch watch;
  const double tau = 0.02;
  const CoverageConfig cc{tau, Box::centered(1.05, 2), tau / 10.0};
  const double one_ball = kPi * tau * tau;

  CoverageGrid grid(cc);
  const double single = grid.add_effect(SensoryPoint{{0.0, 0.0}});
  const double dup = grid.add_effect(SensoryPoint{{0.0, 0.0}});

  CoverageGrid grid2(cc);
  grid2.add_effect(SensoryPoint{{-0.5, 0.0}});
  grid2.add_effect(SensoryPoint{{0.5, 0.0}});
  const double two = grid2.total_coverage();

  const double err1 = std::abs(single / one_ball - 1.0);
  const double err2 = std::abs(two / (2.0 * one_ball) - 1.0);
  const double elapsed = watch.seconds();
  const bool ok =
      err1 <= 0.05 && dup == 0.0 && err2 <= 0.05 && elapsed < 1.0;
  report(1, ok,
         fmt("single ball off by %.3f%%, duplicate adds %.17g, "
             "disjoint pair off by %.3f%% (%.2f s)",
             err1 * 100.0, dup, err2 * 100.0, elapsed));
}

// 2. grid totals vs the Monte-Carlo oracle on random point sets
void criterion_2() {
  Stopwatch watch;
  const double tau = 0.15;
  const Box bounds = Box::centered(1.16, 2);
  const CoverageConfig cc{tau, bounds, tau / 30.0};

  int agree = 0;
  double worst_sigma = 0.0;
  for (int set = 0; set < 20; ++set) {
    Rng rng(mix64(9000, static_cast<std::uint64_t>(set)));
    std::vector<SensoryPoint> points;
    CoverageGrid grid(cc);
    for (int i = 0; i < 100; ++i) {
      SensoryPoint p{{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}};
      grid.add_effect(p);
      points.push_back(std::move(p));
    }
    const McEstimate mc = mc_coverage_oracle(
        points, tau, bounds, 1000000,
        mix64(9100, static_cast<std::uint64_t>(set)));
    const double sigmas =
        std::abs(grid.total_coverage() - mc.estimate) / mc.std_error;
    worst_sigma = std::max(worst_sigma, sigmas);
    if (sigmas <= 3.0) ++agree;
  }
  const double elapsed = watch.seconds();
  const bool ok = agree >= 19 && elapsed < 30.0;
  report(2, ok,
         fmt("grid within 3 sigma of the MC oracle in %d/20 sets, "
             "worst %.2f sigma (%.1f s)",
             agree, worst_sigma, elapsed));
}

// 3. forward kinematics vs an independent long-double recomputation
void criterion_3() {
  Stopwatch watch;
  const ArmSpec arm{};
  const MotorSpace space = arm.motor_space();
  Rng rng(mix64(9200));

  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MotorCommand cmd = sample_uniform_command(space, rng);
    const SensoryPoint got = forward_kinematics(arm, cmd);
    const std::vector<double> want =
        oracles::fk_reference(cmd.angles, arm.segment_length);
    worst = std::max(worst, std::abs(got[0] - want[0]));
    worst = std::max(worst, std::abs(got[1] - want[1]));
  }

  const SensoryPoint rest =
      forward_kinematics(arm, MotorCommand(std::vector<double>(20, 0.0)));
  const double rest_err = std::abs(rest[0] - 1.0);
  const double elapsed = watch.seconds();
  const bool ok =
      worst < 1e-9 && rest_err <= 1e-12 && rest[1] == 0.0 && elapsed < 1.0;
  report(3, ok,
         fmt("worst deviation %.3g over 1000 commands, zero posture off by "
             "(%.3g, %.3g) (%.2f s)",
             worst, rest_err, rest[1], elapsed));
}

// 4. proportional selection law at alpha = 0
void criterion_4() {
  Stopwatch watch;
  const std::vector<double> divs{3.0, 1.0};
  Rng rng(mix64(9400));
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    if (select_strategy(divs, 0.0, rng).index == 0) ++hits;
  const double freq = static_cast<double>(hits) / n;
  const double elapsed = watch.seconds();
  const bool ok = std::abs(freq - 0.75) <= 0.01 && elapsed < 1.0;
  report(4, ok,
         fmt("strategy 0 picked %.4f of %d draws, expected 0.75 +- 0.01 "
             "(%.2f s)",
             freq, n, elapsed));
}

ExperimentConfig reference_config(double d) {
  ExperimentConfig cfg = default_experiment();
  cfg.master_seed = 42;
  for (auto& s : cfg.strategies)
    if (s.type == "rgb") s.d = d;
  return cfg;
}

double mean_usage(const ExperimentConfig& cfg, std::uint64_t selector_index,
                  int strategy, int t_lo, int t_hi) {
  double sum = 0.0;
  for (int r = 0; r < cfg.repetitions; ++r) {
    const RunRecord rec = run_episode(
        cfg, episode_seed(cfg.master_seed, selector_index,
                          static_cast<std::uint64_t>(r)));
    sum += usage_fraction(rec.steps, strategy, t_lo, t_hi);
  }
  return sum / cfg.repetitions;
}

// 5. with an easy goal-babbling setting the adaptive selector hands the
//    late phase to goal babbling
void criterion_5() {
  Stopwatch watch;
  const double usage = mean_usage(reference_config(0.5), 0, 1, 4000, 5000);
  report(5, usage >= 0.70,
         fmt("goal babbling used %.1f%% of steps 4000-5000 at d=0.5, "
             "floor 70%% (%.0f s)",
             usage * 100.0, watch.seconds()));
}

// 6. with a crippled goal-babbling setting the early phase goes to motor
//    babbling
void criterion_6() {
  Stopwatch watch;
  const double usage = mean_usage(reference_config(0.001), 1, 0, 0, 1000);
  report(6, usage >= 0.60,
         fmt("motor babbling used %.1f%% of steps 0-1000 at d=0.001, "
             "floor 60%% (%.0f s)",
             usage * 100.0, watch.seconds()));
}

// 7. the adaptive selector is competitive with the best fixed mixture and
//    never loses to the worse pure strategy
void criterion_7() {
  Stopwatch watch;
  ExperimentConfig base = default_experiment();
  base.master_seed = 42;

  SweepSpec spec;
  spec.d_values = {0.001, 0.05, 0.5};
  for (int i = 0; i <= 10; ++i) spec.p_grid.push_back(i / 10.0);
  const SummaryStats stats = sweep(base, spec);

  const std::size_t block = spec.p_grid.size() + 1;  // mixtures + adapt
  bool ok = stats.outcomes.size() == spec.d_values.size() * block;
  std::string detail;
  for (std::size_t di = 0; ok && di < spec.d_values.size(); ++di) {
    const std::size_t at = di * block;
    double best_mix = 0.0;
    for (std::size_t i = 0; i < spec.p_grid.size(); ++i)
      best_mix = std::max(best_mix, stats.outcomes[at + i].mean);
    const double pure_goal = stats.outcomes[at].mean;  // p = 0
    const double pure_motor =
        stats.outcomes[at + spec.p_grid.size() - 1].mean;  // p = 1
    const double adapt = stats.outcomes[at + block - 1].mean;

    const bool competitive = di == 2 || adapt >= 0.9 * best_mix;
    const bool floor = adapt >= std::min(pure_goal, pure_motor);
    ok = ok && competitive && floor;
    detail += fmt("%sd=%g adapt/best %.3f, floor %s", di ? "; " : "",
                  spec.d_values[di], adapt / best_mix,
                  floor ? "held" : "broken");
  }
  detail += fmt(" (%.0f s)", watch.seconds());
  report(7, ok, detail);
}

// 8. sweeping twice with one config and master seed emits identical bytes
void criterion_8() {
  Stopwatch watch;
  ExperimentConfig base = default_experiment();
  base.master_seed = 42;
  base.n_steps = 300;
  base.repetitions = 3;
  SweepSpec spec;
  spec.d_values = {0.05};
  spec.p_grid = {0.0, 0.5, 1.0};

  const auto tick =
      std::chrono::steady_clock::now().time_since_epoch().count();
  const fs::path root =
      fs::temp_directory_path() / ("divex-accept-" + std::to_string(tick));
  const fs::path a = root / "a";
  const fs::path b = root / "b";
  sweep_and_emit(base, spec, a);
  sweep_and_emit(base, spec, b);

  const bool csv_same = slurp(a / "summary.csv") == slurp(b / "summary.csv");
  const bool json_same =
      slurp(a / "summary.json") == slurp(b / "summary.json");
  const bool nonempty = !slurp(a / "summary.csv").empty();
  std::error_code ec;
  fs::remove_all(root, ec);
  report(8, csv_same && json_same && nonempty,
         fmt("summary.csv %s, summary.json %s across two sweeps (%.1f s)",
             csv_same ? "identical" : "differs",
             json_same ? "identical" : "differs", watch.seconds()));
}

// 9. property suite: clipping, exact NN, coverage order-independence, usage
//    conservation, selection floor
void criterion_9() {
  Stopwatch watch;

  // perturbation stays inside the clipped window around the base command
  const MotorSpace space = ArmSpec{}.motor_space();
  Rng rng(mix64(9900));
  const double ds[] = {0.05, 0.3, 0.9};
  long violations = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const double d = ds[trial % 3];
    const MotorCommand x = sample_uniform_command(space, rng);
    const MotorCommand y = perturb(x, d, space, rng);
    for (std::size_t j = 0; j < space.dim(); ++j) {
      const double half = d * space.range(j);
      const double lo = std::max(space.lo[j], x[j] - half);
      const double hi = std::min(x[j] + half, space.hi[j]);
      if (!(y[j] >= lo && y[j] <= hi)) ++violations;
    }
  }
  bool identity = true;
  for (int trial = 0; trial < 100; ++trial) {
    const MotorCommand x = sample_uniform_command(space, rng);
    const MotorCommand y = perturb(x, 0.0, space, rng);
    for (std::size_t j = 0; j < space.dim(); ++j)
      identity = identity && y[j] == x[j];
  }

  // nearest-neighbour index vs a linear scan, ties included
  KdTree tree(2);
  std::vector<std::vector<double>> pts;
  Rng nn_rng(mix64(9901));
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> p{nn_rng.uniform(-1.0, 1.0),
                          nn_rng.uniform(-1.0, 1.0)};
    tree.insert(p);
    pts.push_back(std::move(p));
  }
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      std::vector<double> p{i / 4.0, j / 4.0};
      tree.insert(p);
      pts.push_back(std::move(p));
    }
  long nn_mismatches = 0;
  long nn_queries = 0;
  auto probe = [&](const std::vector<double>& q) {
    ++nn_queries;
    if (tree.nearest(q) != oracles::linear_nearest(pts, q)) ++nn_mismatches;
  };
  for (int i = 0; i < 400; ++i)
    probe({nn_rng.uniform(-1.2, 1.2), nn_rng.uniform(-1.2, 1.2)});
  for (int i = -4; i < 4; ++i)
    for (int j = -4; j < 4; ++j)
      probe({(i + 0.5) / 4.0, (j + 0.5) / 4.0});  // equidistant lattice ties

  // coverage: monotone increments, order-independent covered set and total
  const CoverageConfig cc{0.05, Box::centered(1.1, 2), 0.005};
  Rng cov_rng(mix64(9902));
  std::vector<SensoryPoint> cloud;
  for (int i = 0; i < 150; ++i)
    cloud.push_back(
        SensoryPoint{{cov_rng.uniform(-1.0, 1.0), cov_rng.uniform(-1.0, 1.0)}});
  std::vector<std::size_t> order(cloud.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::size_t> shuffled = order;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[cov_rng.uniform_index(i)]);

  bool monotone = true;
  CoverageGrid ga(cc);
  double running_a = 0.0;
  for (std::size_t i : order) {
    const double delta = ga.add_effect(cloud[i]);
    monotone = monotone && delta >= 0.0;
    running_a += delta;
  }
  CoverageGrid gb(cc);
  for (std::size_t i : shuffled)
    monotone = monotone && gb.add_effect(cloud[i]) >= 0.0;
  const bool same_cells = ga.covered_cells() == gb.covered_cells();
  const bool same_total =
      std::abs(ga.total_coverage() - gb.total_coverage()) <=
      1e-12 * ga.total_coverage();
  const bool running_exact = running_a == ga.total_coverage();

  // smoothed usage fractions conserve mass at every step
  ExperimentConfig cfg = default_experiment();
  cfg.n_steps = 600;
  cfg.master_seed = 7;
  const RunRecord rec = run_episode(cfg, episode_seed(7, 0, 0));
  const std::vector<RunRecord> runs{rec};
  const CurveSet cs = compute_curves(runs, 2, 50);
  double worst_mass = 0.0;
  for (std::size_t t = 0; t < cs.usage[0].size(); ++t)
    worst_mass = std::max(
        worst_mass, std::abs(cs.usage[0][t] + cs.usage[1][t] - 1.0));
  const bool conserve = worst_mass <= 1e-12;

  // every strategy keeps at least alpha / q of the draws
  const double alpha = 0.2;
  const std::vector<double> divs{0.0, 5.0, 0.0};
  Rng sel_rng(mix64(9903));
  int counts[3] = {0, 0, 0};
  const int n_draws = 100000;
  for (int i = 0; i < n_draws; ++i)
    ++counts[select_strategy(divs, alpha, sel_rng).index];
  double min_freq = 1.0;
  for (int c : counts)
    min_freq = std::min(min_freq, static_cast<double>(c) / n_draws);
  const bool floor = min_freq >= alpha / 3.0 - 0.005;

  const bool ok = violations == 0 && identity && nn_mismatches == 0 &&
                  monotone && same_cells && same_total && running_exact &&
                  conserve && floor;
  report(9, ok,
         fmt("clip violations %ld, d=0 identity %s, nn mismatches %ld/%ld, "
             "coverage order-free %s, usage mass off by %.2g, "
             "min selection share %.4f >= %.4f (%.0f s)",
             violations, identity ? "holds" : "broken", nn_mismatches,
             nn_queries, (monotone && same_cells && same_total &&
                          running_exact)
                             ? "holds"
                             : "broken",
             worst_mass, min_freq, alpha / 3.0 - 0.005, watch.seconds()));
}

}  // namespace

int main() {
  Stopwatch total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("acceptance: %d of 9 criteria failed (%.0f s)\n", failures,
              total.seconds());
  return failures == 0 ? 0 : 1;
}
