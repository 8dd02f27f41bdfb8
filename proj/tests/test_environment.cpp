#include <cmath>
#include <stdexcept>
#include <vector>

#include "divex/environment.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace divex;

TEST_CASE("zero posture reaches full extension along +x") {
  const ArmSpec arm;  // 20 joints of 0.05
  const SensoryPoint tip =
      forward_kinematics(arm, MotorCommand{std::vector<double>(20, 0.0)});
  CHECK(std::abs(tip[0] - 1.0) < 1e-12);
  CHECK(tip[1] == 0.0);
}

TEST_CASE("two-joint bent arm matches the hand computation") {
  const ArmSpec arm{2, 0.5, 150.0};
  const SensoryPoint tip = forward_kinematics(arm, MotorCommand{{45.0, 45.0}});
  // 0.5 cos45 + 0.5 cos90, 0.5 sin45 + 0.5 sin90
  CHECK(tip[0] == doctest::Approx(0.35355339059327373).epsilon(1e-12));
  CHECK(tip[1] == doctest::Approx(0.8535533905932737).epsilon(1e-12));
}

TEST_CASE("matches an independent rotation-composition recomputation") {
  const ArmSpec arm;
  const MotorSpace space = arm.motor_space();
  Rng rng(99);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MotorCommand x = sample_uniform_command(space, rng);
    const SensoryPoint tip = forward_kinematics(arm, x);
    const auto ref = oracles::fk_reference(x.angles, arm.segment_length);
    worst = std::max({worst, std::abs(tip[0] - ref[0]),
                      std::abs(tip[1] - ref[1])});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("joint limits are closed and enforced") {
  const ArmSpec arm{3, 0.1, 150.0};
  CHECK_NOTHROW(forward_kinematics(arm, MotorCommand{{150.0, -150.0, 0.0}}));
  CHECK_THROWS_AS(forward_kinematics(arm, MotorCommand{{150.001, 0.0, 0.0}}),
                  std::domain_error);
  CHECK_THROWS_AS(
      forward_kinematics(arm, MotorCommand{{std::nan(""), 0.0, 0.0}}),
      std::domain_error);
  CHECK_THROWS_AS(forward_kinematics(arm, MotorCommand{{0.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((ArmSpec{0, 0.05, 150.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ArmSpec{20, 0.0, 150.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ArmSpec{20, 0.05, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ArmSpec{20, 0.05, 181.0}.validate()), std::invalid_argument);
  CHECK(ArmSpec{}.reach() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform commands stay inside the space and fill it") {
  const MotorSpace space = MotorSpace::symmetric(4, 150.0);
  Rng rng(3);
  double lo = 150.0;
  double hi = -150.0;
  for (int i = 0; i < 5000; ++i) {
    const MotorCommand x = sample_uniform_command(space, rng);
    CHECK(space.contains(x));
    for (double a : x.angles) {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  CHECK(lo < -149.0);
  CHECK(hi > 149.0);
}

TEST_CASE("arm environment wraps the kinematics") {
  const ArmSpec arm;
  const Environment env = make_arm_environment(arm);
  CHECK(env.sensory_dim == 2);
  CHECK(env.motor_space.dim() == 20);
  Rng rng(11);
  const MotorCommand x = sample_uniform_command(env.motor_space, rng);
  const SensoryPoint direct = forward_kinematics(arm, x);
  const SensoryPoint via_env = env.evaluate(x);
  CHECK(via_env[0] == direct[0]);
  CHECK(via_env[1] == direct[1]);
}
