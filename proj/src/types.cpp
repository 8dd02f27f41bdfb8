#include "divex/types.hpp"

#include <stdexcept>

namespace divex {

Box Box::centered(double half_width, std::size_t dim) {
  Box box;
  box.lo.assign(dim, -half_width);
  box.hi.assign(dim, half_width);
  return box;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t ax = 0; ax < dim(); ++ax) v *= extent(ax);
  return v;
}

bool Box::contains(std::span<const double> p) const {
  if (p.size() != dim()) return false;
  for (std::size_t ax = 0; ax < dim(); ++ax) {
    // NaN coordinates fail both comparisons and are rejected
    if (!(p[ax] >= lo[ax] && p[ax] <= hi[ax])) return false;
  }
  return true;
}

void Box::validate() const {
  if (lo.size() != hi.size())
    throw std::invalid_argument("box: lo/hi dimension mismatch");
  if (lo.empty()) throw std::invalid_argument("box: dimension must be >= 1");
  for (std::size_t ax = 0; ax < dim(); ++ax) {
    if (!(lo[ax] < hi[ax]))
      throw std::invalid_argument("box: degenerate or inverted axis");
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d2 += diff * diff;
  }
  return d2;
}

}  // namespace divex
