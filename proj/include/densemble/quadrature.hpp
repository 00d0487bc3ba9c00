#pragma once

#include <span>
#include <string>
#include <vector>

#include "densemble/errors.hpp"

namespace densemble {

// Uniform grid for composite trapezoid integration: an odd number of points
// (>= 3) spanning [lo, hi].
struct QuadratureGrid {
  double lo;
  double hi;
  int points;

  QuadratureGrid(double lo_, double hi_, int points_ = 4097)
      : lo(lo_), hi(hi_), points(points_) {
    if (!(lo < hi)) throw config_error("quadrature grid needs lo < hi");
    if (points < 3 || points % 2 == 0)
      throw config_error("quadrature grid needs an odd point count >= 3, got " +
                         std::to_string(points));
  }

  double step() const { return (hi - lo) / static_cast<double>(points - 1); }
  double at(int g) const { return lo + static_cast<double>(g) * step(); }
};

// Composite trapezoid over precomputed equally spaced values.
inline double trapezoid(std::span<const double> values, double step) {
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
  return acc * step;
}

template <class F>
double integrate(F&& f, const QuadratureGrid& grid) {
  const double step = grid.step();
  double acc = 0.5 * (f(grid.lo) + f(grid.at(grid.points - 1)));
  for (int g = 1; g + 1 < grid.points; ++g) acc += f(grid.at(g));
  return acc * step;
}

}  // namespace densemble
