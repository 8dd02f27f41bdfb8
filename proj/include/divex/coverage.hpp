#pragma once

#include <cstdint>
#include <vector>

#include "divex/rng.hpp"
#include "divex/types.hpp"

namespace divex {

// Volume of the dim-ball of the given radius: pi^(dim/2) r^dim / Gamma(dim/2 + 1).
double ball_volume(std::size_t dim, double radius);

struct CoverageConfig {
  double tau = 0.02;        // ball radius, meters
  Box bounds;               // must contain every expected effect inflated by tau
  double cell_size = 0.002; // grid resolution, meters

  // tau > 0, 0 < cell_size <= tau, bounds nondegenerate on every axis.
  void validate() const;
};

// Occupancy grid over the union of tau-balls centred on observed effects.
// A cell counts as covered iff its centre lies within tau of some effect, so
// the covered set after a batch of insertions does not depend on their order.
// Covered area is the covered-cell count times the cell volume; cells only
// flip 0 -> 1 and the total never decreases.
class CoverageGrid {
 public:
  explicit CoverageGrid(CoverageConfig config);

  // Adds one effect and returns the newly covered area, i.e. the area this
  // effect's ball adds to the union of everything inserted before. Re-adding
  // an identical point returns exactly 0. Throws std::out_of_range when the
  // effect lies outside the configured bounds.
  double add_effect(const SensoryPoint& y);

  // Running sum of every value add_effect has returned.
  double total_coverage() const { return total_; }

  std::size_t covered_cells() const { return covered_; }
  double cell_volume() const { return cell_volume_; }
  std::size_t cell_count() const { return occupancy_.size(); }
  std::size_t cells_along(std::size_t axis) const { return shape_[axis]; }
  const CoverageConfig& config() const { return config_; }

 private:
  CoverageConfig config_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::vector<bool> occupancy_;
  std::size_t covered_ = 0;
  double total_ = 0.0;
  double cell_volume_ = 1.0;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of the area of the union of tau-balls around `points`:
// the fraction of uniform samples in `bounds` that fall within tau of some
// point, times the bounds volume. std_error = volume * sqrt(p(1-p)/n).
// Deliberately independent of CoverageGrid; serves as its test oracle.
McEstimate mc_coverage_oracle(const std::vector<SensoryPoint>& points,
                              double tau, const Box& bounds,
                              std::size_t n_samples, std::uint64_t seed);

}  // namespace divex
