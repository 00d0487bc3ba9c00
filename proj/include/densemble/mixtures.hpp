#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "densemble/density.hpp"
#include "densemble/errors.hpp"
#include "densemble/kde.hpp"
#include "densemble/quadrature.hpp"

namespace densemble {

// Convex combination of component densities: f(x) = sum_m a_m g_m(x).
class MixtureDensity {
 public:
  MixtureDensity(std::vector<Density> components, std::vector<double> weights)
      : components_(std::move(components)), weights_(std::move(weights)) {
    if (components_.empty() || components_.size() != weights_.size())
      throw config_error("mixture needs one weight per component");
    double sum = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw config_error("mixture weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw config_error("mixture weights must sum to 1");
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < components_.size(); ++m)
      acc += weights_[m] * components_[m](x);
    return acc;
  }

  void add_grid_values(double lo, double step, int count, double* out,
                       double scale) const {
    for (std::size_t m = 0; m < components_.size(); ++m)
      if (weights_[m] > 0.0)
        components_[m].add_grid_values(lo, step, count, out, scale * weights_[m]);
  }

  Support support() const {
    Support s = components_.front().support();
    for (const auto& c : components_) {
      const Support cs = c.support();
      s.lo = std::min(s.lo, cs.lo);
      s.hi = std::max(s.hi, cs.hi);
    }
    return s;
  }

  const std::vector<Density>& components() const { return components_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<Density> components_;
  std::vector<double> weights_;
};

// Normalized product of weighted kernel estimates, restricted to a domain:
//   f(x) = C * prod_m g_m(x) on [lo, hi], 0 outside,
// with C fixed by trapezoid quadrature so that f integrates to one.
class ProductDensity {
 public:
  ProductDensity(std::vector<KernelDensity> factors, Support domain,
                 int normalization_points = 4097)
      : factors_(std::move(factors)), domain_(domain) {
    if (factors_.empty()) throw config_error("product needs at least one factor");
    if (!(domain_.lo < domain_.hi))
      throw config_error("product domain needs lo < hi");
    const QuadratureGrid grid(domain_.lo, domain_.hi, normalization_points);
    const std::vector<double> values = factor_product_on_grid(grid);
    const double mass = trapezoid(values, grid.step());
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw numeric_error("product density has no mass on its domain");
    normalizer_ = 1.0 / mass;
  }

  double operator()(double x) const {
    if (x < domain_.lo || x > domain_.hi) return 0.0;
    double prod = normalizer_;
    for (const auto& f : factors_) prod *= f(x);
    return prod;
  }

  void add_grid_values(double lo, double step, int count, double* out,
                       double scale) const {
    std::vector<double> prod(static_cast<std::size_t>(count), 1.0);
    std::vector<double> tmp(static_cast<std::size_t>(count));
    for (const auto& f : factors_) {
      std::fill(tmp.begin(), tmp.end(), 0.0);
      f.add_grid_values(lo, step, count, tmp.data(), 1.0);
      for (int g = 0; g < count; ++g) prod[static_cast<std::size_t>(g)] *= tmp[static_cast<std::size_t>(g)];
    }
    const double a = scale * normalizer_;
    for (int g = 0; g < count; ++g) {
      const double x = lo + static_cast<double>(g) * step;
      if (x >= domain_.lo && x <= domain_.hi)
        out[g] += a * prod[static_cast<std::size_t>(g)];
    }
  }

  Support support() const { return domain_; }
  double normalizer() const { return normalizer_; }
  const std::vector<KernelDensity>& factors() const { return factors_; }

 private:
  std::vector<double> factor_product_on_grid(const QuadratureGrid& grid) const {
    std::vector<double> prod(static_cast<std::size_t>(grid.points), 1.0);
    std::vector<double> tmp(static_cast<std::size_t>(grid.points));
    for (const auto& f : factors_) {
      std::fill(tmp.begin(), tmp.end(), 0.0);
      f.add_grid_values(grid.lo, grid.step(), grid.points, tmp.data(), 1.0);
      for (std::size_t g = 0; g < prod.size(); ++g) prod[g] *= tmp[g];
    }
    return prod;
  }

  std::vector<KernelDensity> factors_;
  Support domain_;
  double normalizer_ = 1.0;
};

// Even average of per-split mixtures: f(x) = (1/S) sum_s m_s(x).
class AverageDensity {
 public:
  explicit AverageDensity(std::vector<MixtureDensity> terms)
      : terms_(std::move(terms)) {
    if (terms_.empty()) throw config_error("average needs at least one term");
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (const auto& t : terms_) acc += t(x);
    return acc / static_cast<double>(terms_.size());
  }

  void add_grid_values(double lo, double step, int count, double* out,
                       double scale) const {
    const double a = scale / static_cast<double>(terms_.size());
    for (const auto& t : terms_) t.add_grid_values(lo, step, count, out, a);
  }

  Support support() const {
    Support s = terms_.front().support();
    for (const auto& t : terms_) {
      const Support ts = t.support();
      s.lo = std::min(s.lo, ts.lo);
      s.hi = std::max(s.hi, ts.hi);
    }
    return s;
  }

  const std::vector<MixtureDensity>& terms() const { return terms_; }

 private:
  std::vector<MixtureDensity> terms_;
};

}  // namespace densemble
