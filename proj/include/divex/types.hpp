#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace divex {

// A point of the sensory space S (an effect), in meters.
struct SensoryPoint {
  std::vector<double> coords;

  SensoryPoint() = default;
  explicit SensoryPoint(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
};

// A motor command: one angle per joint, in degrees.
struct MotorCommand {
  std::vector<double> angles;

  MotorCommand() = default;
  explicit MotorCommand(std::vector<double> a) : angles(std::move(a)) {}

  std::size_t dim() const { return angles.size(); }
  double operator[](std::size_t i) const { return angles[i]; }
};

// Axis-aligned hyperrectangle.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lo_, std::vector<double> hi_)
      : lo(std::move(lo_)), hi(std::move(hi_)) {}

  // [-half_width, half_width]^dim
  static Box centered(double half_width, std::size_t dim);

  std::size_t dim() const { return lo.size(); }
  double extent(std::size_t axis) const { return hi[axis] - lo[axis]; }
  double volume() const;
  bool contains(std::span<const double> p) const;

  // Requires matching lo/hi sizes, dim >= 1 and lo < hi on every axis.
  void validate() const;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace divex
