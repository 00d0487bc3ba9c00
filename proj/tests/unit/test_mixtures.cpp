#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "densemble/histogram.hpp"
#include "densemble/kde.hpp"
#include "densemble/mixtures.hpp"
#include "densemble/rng.hpp"

using namespace densemble;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Sample normal_sample(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, sd);
  Sample s(n);
  for (double& v : s) v = normal(rng);
  return s;
}

}  // namespace

TEST_CASE("mixture weights must be convex") {
  const Density d = Density(KernelDensity({0.0, 1.0}, Kernel::gaussian, 1.0));
  CHECK_THROWS_AS(MixtureDensity({d, d}, {0.7, 0.7}), config_error);
  CHECK_THROWS_AS(MixtureDensity({d, d}, {1.5, -0.5}), config_error);
  CHECK_THROWS_AS(MixtureDensity({d, d}, {1.0}), config_error);
  CHECK_NOTHROW(MixtureDensity({d, d}, {0.25, 0.75}));
}

TEST_CASE("mixing identical components is the identity") {
  const KernelDensity kde({0.0, 1.0, 2.5}, Kernel::gaussian, 0.8);
  const MixtureDensity mix({Density(kde), Density(kde)}, {0.5, 0.5});
  for (double x : {-1.0, 0.0, 0.3, 2.0, 4.0}) {
    CHECK_THAT(mix(x), WithinAbs(kde(x), 1e-15));
  }
}

TEST_CASE("mixture evaluates the weighted sum") {
  const Histogram a({0.0, 1.0}, {1.0});
  const Histogram b({0.0, 2.0}, {0.5});
  const MixtureDensity mix({Density(a), Density(b)}, {0.25, 0.75});
  CHECK_THAT(mix(0.5), WithinAbs(0.25 * 1.0 + 0.75 * 0.5, 1e-15));
  CHECK_THAT(mix(1.5), WithinAbs(0.75 * 0.5, 1e-15));
  CHECK(mix(3.0) == 0.0);
  const Support s = mix.support();
  CHECK(s.lo == 0.0);
  CHECK(s.hi == 2.0);
}

TEST_CASE("mixture grid accumulation matches pointwise evaluation") {
  const Sample s = normal_sample(60, 21);
  const MixtureDensity mix(
      {Density(KernelDensity(s, Kernel::gaussian, 0.3)),
       Density(Histogram::fit(s, 8))},
      {0.4, 0.6});
  const double lo = -4.0, step = 0.02;
  const int count = 401;
  std::vector<double> grid(count, 0.0);
  mix.add_grid_values(lo, step, count, grid.data(), 1.0);
  for (int g = 0; g < count; g += 5) {
    CHECK_THAT(grid[static_cast<std::size_t>(g)],
               WithinAbs(mix(lo + g * step), 1e-12));
  }
}

TEST_CASE("product density is normalized over its domain and zero outside") {
  const Sample s = normal_sample(500, 23);
  const KernelDensity kde(s, Kernel::gaussian, 0.35);
  const ProductDensity prod({kde, kde}, {-4.0, 4.0});
  CHECK(prod(-4.5) == 0.0);
  CHECK(prod(4.0000001) == 0.0);
  const double mass = integrate(Density(prod), QuadratureGrid(-4.0, 4.0, 4097));
  CHECK_THAT(mass, WithinAbs(1.0, 1e-9));
  // single near-unit-mass factor keeps the normalizer near one
  const ProductDensity single({kde}, {-5.0, 5.0});
  CHECK_THAT(single.normalizer(), WithinAbs(1.0, 1e-3));
}

TEST_CASE("product grid accumulation matches pointwise evaluation") {
  const Sample s = normal_sample(80, 29);
  const ProductDensity prod(
      {KernelDensity(s, Kernel::gaussian, 0.5),
       KernelDensity(s, Kernel::gaussian, 1.0)},
      {-3.0, 3.0});
  const double lo = -3.5, step = 0.025;
  const int count = 281;
  std::vector<double> grid(count, 0.0);
  prod.add_grid_values(lo, step, count, grid.data(), 1.0);
  for (int g = 0; g < count; g += 3) {
    const double x = lo + g * step;
    CHECK_THAT(grid[static_cast<std::size_t>(g)], WithinAbs(prod(x), 1e-10));
  }
}

TEST_CASE("average density is the even mean of its terms") {
  const Sample s1 = normal_sample(50, 31);
  const Sample s2 = normal_sample(50, 32);
  const MixtureDensity m1({Density(KernelDensity(s1, Kernel::gaussian, 0.4))}, {1.0});
  const MixtureDensity m2({Density(KernelDensity(s2, Kernel::gaussian, 0.6))}, {1.0});
  const AverageDensity avg({m1, m2});
  for (double x : {-2.0, 0.0, 1.7}) {
    CHECK_THAT(avg(x), WithinAbs(0.5 * (m1(x) + m2(x)), 1e-15));
  }
  std::vector<double> grid(101, 0.0);
  avg.add_grid_values(-2.0, 0.04, 101, grid.data(), 1.0);
  for (int g = 0; g < 101; g += 10)
    CHECK_THAT(grid[static_cast<std::size_t>(g)],
               WithinAbs(avg(-2.0 + g * 0.04), 1e-13));
}

TEST_CASE("empty aggregates are rejected") {
  CHECK_THROWS_AS(MixtureDensity({}, {}), config_error);
  CHECK_THROWS_AS(AverageDensity({}), config_error);
  CHECK_THROWS_AS(ProductDensity({}, {0.0, 1.0}), config_error);
}
