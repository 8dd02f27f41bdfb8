#pragma once

#include <functional>

#include "divex/rng.hpp"
#include "divex/types.hpp"

namespace divex {

// Motor space M: one closed interval [lo_j, hi_j] per joint, degrees.
// Degenerate intervals (lo_j == hi_j) are allowed.
struct MotorSpace {
  std::vector<double> lo;
  std::vector<double> hi;

  static MotorSpace symmetric(std::size_t joints, double limit_deg);

  std::size_t dim() const { return lo.size(); }
  double range(std::size_t j) const { return hi[j] - lo[j]; }
  bool contains(const MotorCommand& x) const;
  void validate() const;
};

// Planar open-chain arm: equal-length segments, symmetric joint limits.
struct ArmSpec {
  int joint_count = 20;
  double segment_length = 0.05;  // meters
  double joint_limit = 150.0;    // degrees, symmetric about 0

  void validate() const;
  double reach() const { return joint_count * segment_length; }
  MotorSpace motor_space() const;
};

// End-effector position of the planar chain. Angles are relative: each joint
// rotates its link with respect to the previous one, the base sits at the
// origin and the zero posture points along +x. Degrees in, meters out.
// Throws std::domain_error when an angle leaves the joint limits.
SensoryPoint forward_kinematics(const ArmSpec& arm, const MotorCommand& x);

// Each coordinate drawn independently and uniformly from its interval.
MotorCommand sample_uniform_command(const MotorSpace& space, Rng& rng);

// The black-box contract: a pure, stateless map from motor commands to
// effects, plus what the exploring agent is allowed to know about it.
struct Environment {
  MotorSpace motor_space;
  std::size_t sensory_dim = 2;
  std::function<SensoryPoint(const MotorCommand&)> evaluate;
};

// The idealized arm: evaluate == forward_kinematics, no noise.
Environment make_arm_environment(const ArmSpec& arm);

}  // namespace divex
