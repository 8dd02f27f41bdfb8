#include "divex/coverage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace divex {

double ball_volume(std::size_t dim, double radius) {
  if (dim == 0) throw std::invalid_argument("ball_volume: dim must be >= 1");
  if (radius < 0.0) throw std::invalid_argument("ball_volume: negative radius");
  const double half = static_cast<double>(dim) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) *
         std::pow(radius, static_cast<double>(dim));
}

void CoverageConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("coverage: tau must be > 0");
  if (!(cell_size > 0.0))
    throw std::invalid_argument("coverage: cell_size must be > 0");
  if (cell_size > tau)
    throw std::invalid_argument("coverage: cell_size must not exceed tau");
  bounds.validate();
}

namespace {

std::vector<std::size_t> grid_shape(const Box& bounds, double h) {
  std::vector<std::size_t> shape(bounds.dim());
  for (std::size_t ax = 0; ax < bounds.dim(); ++ax) {
    // ceil with a small backoff so exact multiples don't gain a sliver cell
    const double n = std::ceil(bounds.extent(ax) / h - 1e-9);
    shape[ax] = n < 1.0 ? 1 : static_cast<std::size_t>(n);
  }
  return shape;
}

}  // namespace

CoverageGrid::CoverageGrid(CoverageConfig config) : config_(std::move(config)) {
  config_.validate();
  shape_ = grid_shape(config_.bounds, config_.cell_size);
  const std::size_t dim = shape_.size();
  strides_.assign(dim, 1);
  std::size_t cells = 1;
  for (std::size_t ax = dim; ax-- > 0;) {
    strides_[ax] = cells;
    cells *= shape_[ax];
  }
  occupancy_.assign(cells, false);
  cell_volume_ = std::pow(config_.cell_size, static_cast<double>(dim));
}

double CoverageGrid::add_effect(const SensoryPoint& y) {
  const std::size_t dim = config_.bounds.dim();
  if (y.dim() != dim)
    throw std::invalid_argument("add_effect: effect dimension mismatch");
  if (!config_.bounds.contains(y.coords))
    throw std::out_of_range("add_effect: effect outside coverage bounds");

  const double h = config_.cell_size;
  const double tau = config_.tau;
  const double tau2 = tau * tau;

  // Candidate index window per axis, widened by one cell; the exact
  // centre-distance test below filters.
  std::vector<long> win_lo(dim), win_hi(dim);
  for (std::size_t ax = 0; ax < dim; ++ax) {
    const double lo = config_.bounds.lo[ax];
    const long i_lo =
        static_cast<long>(std::ceil((y[ax] - tau - lo) / h - 0.5)) - 1;
    const long i_hi =
        static_cast<long>(std::floor((y[ax] + tau - lo) / h - 0.5)) + 1;
    win_lo[ax] = std::max(i_lo, 0L);
    win_hi[ax] = std::min(i_hi, static_cast<long>(shape_[ax]) - 1);
  }

  std::size_t newly = 0;
  auto visit = [&](auto&& self, std::size_t ax, std::size_t base,
                   double d2) -> void {
    const double lo = config_.bounds.lo[ax];
    for (long i = win_lo[ax]; i <= win_hi[ax]; ++i) {
      const double diff = lo + (static_cast<double>(i) + 0.5) * h - y[ax];
      const double nd2 = d2 + diff * diff;
      if (nd2 > tau2) continue;
      const std::size_t at = base + static_cast<std::size_t>(i) * strides_[ax];
      if (ax + 1 == dim) {
        if (!occupancy_[at]) {
          occupancy_[at] = true;
          ++covered_;
          ++newly;
        }
      } else {
        self(self, ax + 1, at, nd2);
      }
    }
  };
  visit(visit, 0, 0, 0.0);

  const double delta = static_cast<double>(newly) * cell_volume_;
  total_ += delta;
  return delta;
}

McEstimate mc_coverage_oracle(const std::vector<SensoryPoint>& points,
                              double tau, const Box& bounds,
                              std::size_t n_samples, std::uint64_t seed) {
  bounds.validate();
  if (n_samples == 0)
    throw std::invalid_argument("mc_coverage_oracle: n_samples must be > 0");
  if (!(tau > 0.0))
    throw std::invalid_argument("mc_coverage_oracle: tau must be > 0");
  for (const auto& p : points) {
    if (p.dim() != bounds.dim())
      throw std::invalid_argument("mc_coverage_oracle: point dimension mismatch");
  }
  if (points.empty()) return {0.0, 0.0};

  const std::size_t dim = bounds.dim();
  const double tau2 = tau * tau;
  Rng rng(seed);
  std::vector<double> sample(dim);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (std::size_t ax = 0; ax < dim; ++ax)
      sample[ax] = rng.uniform(bounds.lo[ax], bounds.hi[ax]);
    for (const auto& p : points) {
      double d2 = 0.0;
      for (std::size_t ax = 0; ax < dim; ++ax) {
        const double diff = sample[ax] - p[ax];
        d2 += diff * diff;
      }
      if (d2 <= tau2) {
        ++hits;
        break;
      }
    }
  }

  const double volume = bounds.volume();
  const double p_hat =
      static_cast<double>(hits) / static_cast<double>(n_samples);
  const double se =
      volume * std::sqrt(p_hat * (1.0 - p_hat) /
                         static_cast<double>(n_samples));
  return {volume * p_hat, se};
}

}  // namespace divex
