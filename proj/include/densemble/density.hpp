#pragma once

#include <concepts>
#include <memory>
#include <utility>
#include <vector>

#include "densemble/quadrature.hpp"

namespace densemble {

// Closed interval outside which a density is zero or negligible.
struct Support {
  double lo;
  double hi;
};

// Value-semantic handle to an immutable fitted density.
//
// Wraps any type D with
//   double operator()(double) const   — pointwise evaluation
//   Support support() const
// and, optionally,
//   void add_grid_values(double lo, double step, int count,
//                        double* out, double scale) const
// which accumulates scale * d(lo + g*step) into out[g]; types without it fall
// back to pointwise evaluation. The wrapped value is shared, so copies are
// cheap and safe to read from many threads.
class Density {
 public:
  template <class D>
    requires(!std::same_as<std::remove_cvref_t<D>, Density>)
  Density(D d) : impl_(std::make_shared<Holder<std::remove_cvref_t<D>>>(std::move(d))) {}

  double operator()(double x) const { return impl_->at(x); }

  void add_grid_values(double lo, double step, int count, double* out,
                       double scale = 1.0) const {
    impl_->add_grid(lo, step, count, out, scale);
  }

  Support support() const { return impl_->support(); }

 private:
  struct Iface {
    virtual ~Iface() = default;
    virtual double at(double) const = 0;
    virtual void add_grid(double, double, int, double*, double) const = 0;
    virtual Support support() const = 0;
  };

  template <class D>
  struct Holder final : Iface {
    D d;
    explicit Holder(D v) : d(std::move(v)) {}
    double at(double x) const override { return d(x); }
    void add_grid(double lo, double step, int count, double* out,
                  double scale) const override {
      if constexpr (requires { d.add_grid_values(lo, step, count, out, scale); }) {
        d.add_grid_values(lo, step, count, out, scale);
      } else {
        for (int g = 0; g < count; ++g)
          out[g] += scale * d(lo + static_cast<double>(g) * step);
      }
    }
    Support support() const override { return d.support(); }
  };

  std::shared_ptr<const Iface> impl_;
};

namespace detail {
template <class F>
struct FunctionDensity {
  F f;
  Support sup;
  double operator()(double x) const { return f(x); }
  Support support() const { return sup; }
};
}  // namespace detail

// Wrap a plain callable together with an explicit support interval.
template <class F>
Density make_density(F f, Support support) {
  return Density(detail::FunctionDensity<F>{std::move(f), support});
}

inline std::vector<double> grid_values(const Density& d, const QuadratureGrid& grid) {
  std::vector<double> out(static_cast<std::size_t>(grid.points), 0.0);
  d.add_grid_values(grid.lo, grid.step(), grid.points, out.data());
  return out;
}

// Trapezoid mass of a density over a grid; used by normalization checks.
inline double integrate(const Density& d, const QuadratureGrid& grid) {
  return trapezoid(grid_values(d, grid), grid.step());
}

}  // namespace densemble
