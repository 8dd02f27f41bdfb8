#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "divex/environment.hpp"
#include "divex/rng.hpp"
#include "divex/types.hpp"

namespace divex {

struct Observation {
  MotorCommand command;
  SensoryPoint effect;
};

// Exact nearest-neighbour index with incremental insertion. Points keep
// their insertion index; distance ties resolve to the lowest index, exactly
// as a left-to-right linear scan would. No rebalancing: inserts are O(depth)
// and the tree stays correct regardless of shape.
class KdTree {
 public:
  explicit KdTree(std::size_t dim);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t dim() const { return dim_; }

  // Returns the new point's insertion index.
  std::size_t insert(std::span<const double> point);

  // Index of the stored point closest to `query`. Throws std::runtime_error
  // when the tree is empty.
  std::size_t nearest(std::span<const double> query) const;

 private:
  struct Node {
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  double coord(std::size_t node, std::size_t axis) const {
    return coords_[node * dim_ + axis];
  }
  void search(std::int32_t node, std::size_t depth, std::span<const double> q,
              double& best_d2, std::size_t& best) const;

  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<Node> nodes_;
};

// Append-only log of (command, effect) pairs shared by all strategies of a
// run, with an exact NN index over the effects. A query after n appends
// considers exactly those n effects.
class ObservationStore {
 public:
  explicit ObservationStore(std::size_t sensory_dim);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t sensory_dim() const { return index_.dim(); }

  void append(Observation obs);
  const Observation& operator[](std::size_t i) const { return records_[i]; }

  // Stored observation whose effect minimizes the Euclidean distance to the
  // goal; ties go to the earliest insertion. Throws std::runtime_error on an
  // empty store.
  std::size_t nearest_index(const SensoryPoint& goal) const;
  const Observation& nearest(const SensoryPoint& goal) const;

 private:
  std::vector<Observation> records_;
  KdTree index_;
};

// Draws coordinate j uniformly on
//   [max(lo_j, x_j - d*range_j), min(x_j + d*range_j, hi_j)]
// with range_j = hi_j - lo_j. d = 0 returns x unchanged; the result always
// stays inside the space.
MotorCommand perturb(const MotorCommand& x, double d, const MotorSpace& space,
                     Rng& rng);

struct RgbConfig {
  double d = 0.05;  // perturbation ratio in [0, 1]
  Box goal_bounds = Box::centered(1.0, 2);

  void validate() const;
};

// An exploration strategy proposes the next motor command given the shared
// observation log. Strategies see only the motor space and the observations,
// never the environment's internals.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual const std::string& name() const = 0;
  virtual MotorCommand propose(const ObservationStore& store, Rng& rng) const = 0;
};

// Random motor babbling: uniform sampling of the motor space; the store is
// ignored.
class RandomMotorBabbling final : public Strategy {
 public:
  explicit RandomMotorBabbling(MotorSpace space, std::string name = "rmb");

  const std::string& name() const override { return name_; }
  MotorCommand propose(const ObservationStore& store, Rng& rng) const override;

 private:
  MotorSpace space_;
  std::string name_;
};

// Random goal babbling: draw a goal uniformly in the goal bounds, look up the
// command behind the nearest observed effect and perturb it. While the store
// is empty, falls back to a uniform motor sample to bootstrap.
class RandomGoalBabbling final : public Strategy {
 public:
  RandomGoalBabbling(MotorSpace space, RgbConfig config,
                     std::string name = "rgb");

  const std::string& name() const override { return name_; }
  const RgbConfig& config() const { return config_; }
  MotorCommand propose(const ObservationStore& store, Rng& rng) const override;

 private:
  MotorSpace space_;
  RgbConfig config_;
  std::string name_;
};

}  // namespace divex
