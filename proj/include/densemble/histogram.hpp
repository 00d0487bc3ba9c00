#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "densemble/density.hpp"
#include "densemble/errors.hpp"
#include "densemble/sample.hpp"

namespace densemble {

// Piecewise-constant density: ascending breakpoints b_1 < ... < b_L and L-1
// nonnegative cell heights integrating to one. Cells are right-closed
// (b_l, b_{l+1}], except the first which is closed on both ends; evaluation
// outside [b_1, b_L] is zero.
class Histogram {
 public:
  Histogram(std::vector<double> breakpoints, std::vector<double> heights)
      : breaks_(std::move(breakpoints)), heights_(std::move(heights)) {
    validate_breakpoints(breaks_);
    if (heights_.size() + 1 != breaks_.size())
      throw config_error("histogram needs one height per cell");
    double mass = 0.0;
    for (std::size_t l = 0; l < heights_.size(); ++l) {
      if (!(heights_[l] >= 0.0) || !std::isfinite(heights_[l]))
        throw config_error("histogram heights must be finite and nonnegative");
      mass += heights_[l] * (breaks_[l + 1] - breaks_[l]);
    }
    if (std::abs(mass - 1.0) > 1e-12)
      throw config_error("histogram heights must integrate to 1");
  }

  // Equispaced breakpoints from min to max of the sample.
  static Histogram fit(const Sample& sample, int breakpoints) {
    if (breakpoints < 2) throw config_error("need at least 2 breakpoints");
    validate_sample(sample);
    const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
    return fit(sample, equispaced_breakpoints(*lo_it, *hi_it, breakpoints));
  }

  // Histogram over the given breakpoints; heights are normalized by the
  // number of observations falling inside [b_1, b_L].
  static Histogram fit(const Sample& sample, std::vector<double> breakpoints) {
    validate_sample(sample);
    validate_breakpoints(breakpoints);
    std::vector<std::size_t> counts(breakpoints.size() - 1, 0);
    std::size_t inside = 0;
    for (double x : sample) {
      const int cell = cell_index(breakpoints, x);
      if (cell >= 0) {
        ++counts[static_cast<std::size_t>(cell)];
        ++inside;
      }
    }
    if (inside == 0)
      throw numeric_error("no observations within breakpoint range");
    std::vector<double> heights(counts.size());
    for (std::size_t l = 0; l < counts.size(); ++l) {
      const double width = breakpoints[l + 1] - breakpoints[l];
      heights[l] = static_cast<double>(counts[l]) /
                   (static_cast<double>(inside) * width);
    }
    return Histogram(std::move(breakpoints), std::move(heights));
  }

  static std::vector<double> equispaced_breakpoints(double lo, double hi, int count) {
    if (!(lo < hi)) throw numeric_error("zero-width support");
    std::vector<double> b(static_cast<std::size_t>(count));
    const double step = (hi - lo) / static_cast<double>(count - 1);
    b.front() = lo;
    b.back() = hi;
    for (int l = 1; l + 1 < count; ++l)
      b[static_cast<std::size_t>(l)] = lo + static_cast<double>(l) * step;
    return b;
  }

  // Cell containing x under the right-closed convention, or -1 outside.
  static int cell_index(const std::vector<double>& breaks, double x) {
    if (x < breaks.front() || x > breaks.back()) return -1;
    if (x <= breaks[1]) return 0;
    const auto it = std::lower_bound(breaks.begin(), breaks.end(), x);
    return static_cast<int>(it - breaks.begin()) - 1;
  }

  double operator()(double x) const {
    const int cell = cell_index(breaks_, x);
    return cell < 0 ? 0.0 : heights_[static_cast<std::size_t>(cell)];
  }

  void add_grid_values(double lo, double step, int count, double* out,
                       double scale) const {
    // Each cell covers a contiguous range of grid indices; boundaries are
    // resolved with the same comparisons as cell_index.
    int g = first_at_or_above(breaks_.front(), lo, step, count);
    for (std::size_t l = 0; l < heights_.size(); ++l) {
      const double v = scale * heights_[l];
      const double upper = breaks_[l + 1];
      while (g < count && grid_x(lo, step, g) <= upper) {
        out[g] += v;
        ++g;
      }
    }
  }

  Support support() const { return {breaks_.front(), breaks_.back()}; }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& heights() const { return heights_; }

 private:
  static void validate_breakpoints(const std::vector<double>& breaks) {
    if (breaks.size() < 2)
      throw config_error("histogram needs at least 2 breakpoints");
    for (std::size_t l = 0; l + 1 < breaks.size(); ++l)
      if (!(breaks[l] < breaks[l + 1]))
        throw config_error("histogram breakpoints must be strictly ascending");
  }

  static double grid_x(double lo, double step, int g) {
    return lo + static_cast<double>(g) * step;
  }

  // Smallest grid index g with x_g >= bound (count if none).
  static int first_at_or_above(double bound, double lo, double step, int count) {
    const double est = (bound - lo) / step;
    if (est >= static_cast<double>(count)) return count;
    int g = est < 1.0 ? 0 : static_cast<int>(est) - 1;
    while (g < count && grid_x(lo, step, g) < bound) ++g;
    return g;
  }

  std::vector<double> breaks_;
  std::vector<double> heights_;
};

}  // namespace densemble
