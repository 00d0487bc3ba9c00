#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "densemble/kernels.hpp"
#include "densemble/quadrature.hpp"

using namespace densemble;
using Catch::Matchers::WithinAbs;

TEST_CASE("kernel values at reference points") {
  CHECK_THAT(kernel_value(Kernel::gaussian, 0.0), WithinAbs(0.398942, 1e-6));
  // (2*pi)^{-1/2} * exp(-1/2), evaluated independently
  const double expected_at_one = std::exp(-0.5) / std::sqrt(2.0 * M_PI);
  CHECK_THAT(kernel_value(Kernel::gaussian, 1.0), WithinAbs(expected_at_one, 1e-15));
  CHECK_THAT(kernel_value(Kernel::gaussian, 1.0), WithinAbs(0.241971, 1e-6));
  CHECK(kernel_value(Kernel::triangular, 0.0) == 1.0);
  CHECK(kernel_value(Kernel::triangular, 1.0) == 0.0);
  CHECK(kernel_value(Kernel::triangular, -1.0) == 0.0);
  CHECK(kernel_value(Kernel::triangular, 0.25) == 0.75);
}

TEST_CASE("kernels are symmetric") {
  for (double u = 0.0; u <= 5.0; u += 0.173) {
    CHECK(kernel_value(Kernel::gaussian, u) == kernel_value(Kernel::gaussian, -u));
    CHECK(kernel_value(Kernel::triangular, u) ==
          kernel_value(Kernel::triangular, -u));
  }
}

TEST_CASE("kernels integrate to one") {
  const double gaussian_mass = integrate(
      [](double u) { return kernel_value(Kernel::gaussian, u); },
      QuadratureGrid(-9.0, 9.0, 4097));
  CHECK_THAT(gaussian_mass, WithinAbs(1.0, 1e-10));
  const double triangular_mass = integrate(
      [](double u) { return kernel_value(Kernel::triangular, u); },
      QuadratureGrid(-1.0, 1.0, 513));
  CHECK_THAT(triangular_mass, WithinAbs(1.0, 1e-14));
}

TEST_CASE("gaussian kernel underflows to zero beyond the cutoff") {
  CHECK(kernel_value(Kernel::gaussian, kernel_cutoff(Kernel::gaussian)) == 0.0);
  CHECK(kernel_value(Kernel::gaussian, 45.0) == 0.0);
  CHECK(kernel_value(Kernel::gaussian, 38.0) > 0.0);
}

TEST_CASE("kernel names round-trip") {
  CHECK(parse_kernel("gaussian") == Kernel::gaussian);
  CHECK(parse_kernel("triangular") == Kernel::triangular);
  CHECK_THROWS_AS(parse_kernel("epanechnikov"), config_error);
}
