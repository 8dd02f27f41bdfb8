#include "divex/environment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace divex {

MotorSpace MotorSpace::symmetric(std::size_t joints, double limit_deg) {
  MotorSpace space;
  space.lo.assign(joints, -limit_deg);
  space.hi.assign(joints, limit_deg);
  return space;
}

bool MotorSpace::contains(const MotorCommand& x) const {
  if (x.dim() != dim()) return false;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (!(x[j] >= lo[j] && x[j] <= hi[j])) return false;
  }
  return true;
}

void MotorSpace::validate() const {
  if (lo.size() != hi.size())
    throw std::invalid_argument("motor space: lo/hi dimension mismatch");
  if (lo.empty())
    throw std::invalid_argument("motor space: needs at least one joint");
  for (std::size_t j = 0; j < dim(); ++j) {
    if (!(lo[j] <= hi[j]))
      throw std::invalid_argument("motor space: inverted interval");
  }
}

void ArmSpec::validate() const {
  if (joint_count < 1)
    throw std::invalid_argument("arm: joint_count must be >= 1");
  if (!(segment_length > 0.0))
    throw std::invalid_argument("arm: segment_length must be > 0");
  if (!(joint_limit > 0.0 && joint_limit <= 180.0))
    throw std::invalid_argument("arm: joint_limit must be in (0, 180]");
}

MotorSpace ArmSpec::motor_space() const {
  return MotorSpace::symmetric(static_cast<std::size_t>(joint_count),
                               joint_limit);
}

SensoryPoint forward_kinematics(const ArmSpec& arm, const MotorCommand& x) {
  arm.validate();
  if (x.dim() != static_cast<std::size_t>(arm.joint_count))
    throw std::invalid_argument("forward_kinematics: joint count mismatch");
  for (double a : x.angles) {
    if (!(a >= -arm.joint_limit && a <= arm.joint_limit))
      throw std::domain_error("forward_kinematics: angle outside joint limits");
  }

  constexpr double to_rad = std::numbers::pi / 180.0;
  double cum = 0.0;
  double px = 0.0;
  double py = 0.0;
  for (double a : x.angles) {
    cum += a * to_rad;
    px += arm.segment_length * std::cos(cum);
    py += arm.segment_length * std::sin(cum);
  }
  return SensoryPoint{{px, py}};
}

MotorCommand sample_uniform_command(const MotorSpace& space, Rng& rng) {
  MotorCommand x;
  x.angles.resize(space.dim());
  for (std::size_t j = 0; j < space.dim(); ++j)
    x.angles[j] = rng.uniform(space.lo[j], space.hi[j]);
  return x;
}

Environment make_arm_environment(const ArmSpec& arm) {
  arm.validate();
  Environment env;
  env.motor_space = arm.motor_space();
  env.sensory_dim = 2;
  env.evaluate = [arm](const MotorCommand& x) {
    return forward_kinematics(arm, x);
  };
  return env;
}

}  // namespace divex
