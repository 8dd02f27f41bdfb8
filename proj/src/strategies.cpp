#include "divex/strategies.hpp"

#include <limits>
#include <stdexcept>

namespace divex {

KdTree::KdTree(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("kd-tree: dim must be >= 1");
}

std::size_t KdTree::insert(std::span<const double> point) {
  if (point.size() != dim_)
    throw std::invalid_argument("kd-tree: point dimension mismatch");

  const auto id = static_cast<std::int32_t>(nodes_.size());
  coords_.insert(coords_.end(), point.begin(), point.end());
  nodes_.emplace_back();
  if (id == 0) return 0;

  std::int32_t cur = 0;
  std::size_t depth = 0;
  for (;;) {
    const std::size_t axis = depth % dim_;
    // strictly-less goes left; equal coordinates go right
    auto& link = point[axis] < coord(static_cast<std::size_t>(cur), axis)
                     ? nodes_[static_cast<std::size_t>(cur)].left
                     : nodes_[static_cast<std::size_t>(cur)].right;
    if (link < 0) {
      link = id;
      return static_cast<std::size_t>(id);
    }
    cur = link;
    ++depth;
  }
}

std::size_t KdTree::nearest(std::span<const double> query) const {
  if (nodes_.empty()) throw std::runtime_error("kd-tree: nearest on empty tree");
  if (query.size() != dim_)
    throw std::invalid_argument("kd-tree: query dimension mismatch");
  double best_d2 = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  search(0, 0, query, best_d2, best);
  return best;
}

void KdTree::search(std::int32_t node, std::size_t depth,
                    std::span<const double> q, double& best_d2,
                    std::size_t& best) const {
  const auto n = static_cast<std::size_t>(node);
  double d2 = 0.0;
  for (std::size_t ax = 0; ax < dim_; ++ax) {
    const double diff = q[ax] - coord(n, ax);
    d2 += diff * diff;
  }
  if (d2 < best_d2 || (d2 == best_d2 && n < best)) {
    best_d2 = d2;
    best = n;
  }

  const std::size_t axis = depth % dim_;
  const double axis_diff = q[axis] - coord(n, axis);
  const auto& links = nodes_[n];
  const std::int32_t near = axis_diff < 0.0 ? links.left : links.right;
  const std::int32_t far = axis_diff < 0.0 ? links.right : links.left;
  if (near >= 0) search(near, depth + 1, q, best_d2, best);
  // the far side can still hold an equal-distance, lower-index point when
  // the splitting plane sits exactly at best_d2, hence <=
  if (far >= 0 && axis_diff * axis_diff <= best_d2)
    search(far, depth + 1, q, best_d2, best);
}

ObservationStore::ObservationStore(std::size_t sensory_dim)
    : index_(sensory_dim) {}

void ObservationStore::append(Observation obs) {
  if (obs.effect.dim() != index_.dim())
    throw std::invalid_argument("store: effect dimension mismatch");
  index_.insert(obs.effect.coords);
  records_.push_back(std::move(obs));
}

std::size_t ObservationStore::nearest_index(const SensoryPoint& goal) const {
  if (records_.empty())
    throw std::runtime_error("store: nearest query on empty store");
  return index_.nearest(goal.coords);
}

const Observation& ObservationStore::nearest(const SensoryPoint& goal) const {
  return records_[nearest_index(goal)];
}

MotorCommand perturb(const MotorCommand& x, double d, const MotorSpace& space,
                     Rng& rng) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::invalid_argument("perturb: ratio must lie in [0, 1]");
  if (!space.contains(x))
    throw std::invalid_argument("perturb: command outside motor space");

  MotorCommand out;
  out.angles.resize(space.dim());
  for (std::size_t j = 0; j < space.dim(); ++j) {
    const double half = d * space.range(j);
    const double a = std::max(space.lo[j], x[j] - half);
    const double b = std::min(x[j] + half, space.hi[j]);
    out.angles[j] = rng.uniform(a, b);
  }
  return out;
}

void RgbConfig::validate() const {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::invalid_argument("rgb: d must lie in [0, 1]");
  goal_bounds.validate();
}

RandomMotorBabbling::RandomMotorBabbling(MotorSpace space, std::string name)
    : space_(std::move(space)), name_(std::move(name)) {
  space_.validate();
}

MotorCommand RandomMotorBabbling::propose(const ObservationStore&,
                                          Rng& rng) const {
  return sample_uniform_command(space_, rng);
}

RandomGoalBabbling::RandomGoalBabbling(MotorSpace space, RgbConfig config,
                                       std::string name)
    : space_(std::move(space)), config_(std::move(config)),
      name_(std::move(name)) {
  space_.validate();
  config_.validate();
}

MotorCommand RandomGoalBabbling::propose(const ObservationStore& store,
                                         Rng& rng) const {
  if (store.empty()) return sample_uniform_command(space_, rng);

  SensoryPoint goal;
  goal.coords.resize(config_.goal_bounds.dim());
  for (std::size_t ax = 0; ax < goal.coords.size(); ++ax)
    goal.coords[ax] =
        rng.uniform(config_.goal_bounds.lo[ax], config_.goal_bounds.hi[ax]);
  const Observation& obs = store.nearest(goal);
  return perturb(obs.command, config_.d, space_, rng);
}

}  // namespace divex
