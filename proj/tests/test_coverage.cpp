#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "divex/coverage.hpp"
#include "divex/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace divex;

namespace {

std::vector<SensoryPoint> random_points(std::size_t n, double half_width,
                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SensoryPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(SensoryPoint{{rng.uniform(-half_width, half_width),
                                rng.uniform(-half_width, half_width)}});
  return pts;
}

}  // namespace

TEST_CASE("ball volume matches the closed forms") {
  CHECK(ball_volume(1, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ball_volume(2, 0.02) ==
        doctest::Approx(std::numbers::pi * 4e-4).epsilon(1e-12));
  CHECK(ball_volume(3, 1.0) ==
        doctest::Approx(4.0 / 3.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(ball_volume(2, 0.0) == 0.0);
  CHECK_THROWS_AS(ball_volume(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ball_volume(2, -1.0), std::invalid_argument);
}

TEST_CASE("config validation rejects broken setups") {
  const Box bounds = Box::centered(1.0, 2);
  CHECK_THROWS_AS((CoverageConfig{0.0, bounds, 0.001}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((CoverageConfig{0.02, bounds, 0.0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((CoverageConfig{0.02, bounds, 0.03}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((CoverageConfig{0.02, Box{{0.0}, {0.0}}, 0.002}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW((CoverageConfig{0.02, bounds, 0.02}.validate()));
}

TEST_CASE("single effect covers one ball, duplicates add exactly zero") {
  CoverageGrid grid(CoverageConfig{0.02, Box::centered(1.05, 2), 0.002});
  const double ball = std::numbers::pi * 0.02 * 0.02;
  const double first = grid.add_effect(SensoryPoint{{0.1, 0.2}});
  CHECK(first == doctest::Approx(ball).epsilon(0.05));
  CHECK(grid.total_coverage() == first);
  CHECK(grid.add_effect(SensoryPoint{{0.1, 0.2}}) == 0.0);
  CHECK(grid.total_coverage() == first);
}

TEST_CASE("two distant effects cover two full balls") {
  CoverageGrid grid(CoverageConfig{0.02, Box::centered(1.05, 2), 0.002});
  const double ball = std::numbers::pi * 0.02 * 0.02;
  grid.add_effect(SensoryPoint{{-0.3, 0.0}});
  grid.add_effect(SensoryPoint{{0.3, 0.0}});
  CHECK(grid.total_coverage() == doctest::Approx(2.0 * ball).epsilon(0.05));
}

TEST_CASE("overlapping pair follows the two-circle union formula") {
  const double tau = 0.02;
  // centres tau apart: the second ball adds union(2) - area(1)
  const double expected =
      oracles::two_circle_union_area(tau, tau) - std::numbers::pi * tau * tau;
  CHECK(expected == doctest::Approx(7.652891819924146e-4).epsilon(1e-12));

  CoverageGrid grid(CoverageConfig{tau, Box::centered(0.5, 2), tau / 30.0});
  grid.add_effect(SensoryPoint{{0.0, 0.0}});
  const double second = grid.add_effect(SensoryPoint{{tau, 0.0}});
  CHECK(second == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("effects on the boundary are accepted, outside or NaN rejected") {
  CoverageGrid grid(CoverageConfig{0.02, Box::centered(1.0, 2), 0.002});
  CHECK_NOTHROW(grid.add_effect(SensoryPoint{{1.0, -1.0}}));
  CHECK_THROWS_AS(grid.add_effect(SensoryPoint{{1.0000001, 0.0}}),
                  std::out_of_range);
  CHECK_THROWS_AS(
      grid.add_effect(SensoryPoint{{std::nan(""), 0.0}}), std::out_of_range);
  CHECK_THROWS_AS(grid.add_effect(SensoryPoint{{0.0, 0.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("increments are nonnegative and totals are order independent") {
  const auto pts = random_points(120, 1.0, 2024);
  const CoverageConfig cfg{0.02, Box::centered(1.05, 2), 0.002};

  CoverageGrid forward(cfg);
  double running = 0.0;
  for (const auto& p : pts) {
    const double delta = forward.add_effect(p);
    CHECK(delta >= 0.0);
    running += delta;
    CHECK(forward.total_coverage() == running);  // bitwise running sum
  }

  auto shuffled = pts;
  Rng rng(7);
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
  CoverageGrid backward(cfg);
  for (const auto& p : shuffled) backward.add_effect(p);

  CHECK(forward.covered_cells() == backward.covered_cells());
  CHECK(forward.total_coverage() ==
        doctest::Approx(backward.total_coverage()).epsilon(1e-12));
}

TEST_CASE("grid agrees with the monte-carlo oracle") {
  const Box bounds = Box::centered(1.05, 2);
  int agreements = 0;
  for (int set = 0; set < 5; ++set) {
    const auto pts = random_points(100, 1.0, 9000 + static_cast<std::uint64_t>(set));
    CoverageGrid grid(CoverageConfig{0.02, bounds, 0.002});
    for (const auto& p : pts) grid.add_effect(p);
    const McEstimate mc =
        mc_coverage_oracle(pts, 0.02, bounds, 200000,
                           77 + static_cast<std::uint64_t>(set));
    if (std::abs(grid.total_coverage() - mc.estimate) <= 3.0 * mc.std_error)
      ++agreements;
  }
  CHECK(agreements >= 4);
}

TEST_CASE("monte-carlo oracle basics") {
  const Box bounds = Box::centered(1.0, 2);
  const McEstimate none = mc_coverage_oracle({}, 0.02, bounds, 1000, 1);
  CHECK(none.estimate == 0.0);
  CHECK(none.std_error == 0.0);

  const McEstimate one = mc_coverage_oracle({SensoryPoint{{0.0, 0.0}}}, 0.1,
                                            bounds, 400000, 5);
  CHECK(std::abs(one.estimate - std::numbers::pi * 0.01) <=
        3.0 * one.std_error);
  CHECK_THROWS_AS(mc_coverage_oracle({SensoryPoint{{0.0, 0.0}}}, 0.1, bounds,
                                     0, 5),
                  std::invalid_argument);
}
