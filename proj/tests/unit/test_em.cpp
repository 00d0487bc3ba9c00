#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "densemble/em.hpp"
#include "densemble/rng.hpp"
#include "support/oracles.hpp"

using namespace densemble;
using Catch::Matchers::WithinAbs;

namespace {

void check_trace_nondecreasing(const EmResult& r) {
  for (std::size_t k = 1; k < r.loglik_trace.size(); ++k)
    CHECK(r.loglik_trace[k] >= r.loglik_trace[k - 1] - 1e-10);
}

}  // namespace

TEST_CASE("single column gets the whole weight") {
  HeldOutMatrix A(3, 1);
  A.at(0, 0) = 0.2;
  A.at(1, 0) = 1.4;
  A.at(2, 0) = 0.7;
  const EmResult r = em_mixture_weights(A);
  REQUIRE(r.weights.size() == 1);
  CHECK(r.weights[0] == 1.0);
  check_trace_nondecreasing(r);
}

TEST_CASE("identical columns stay at the uniform fixed point") {
  HeldOutMatrix A(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    A.at(i, 0) = 0.3 + 0.1 * static_cast<double>(i);
    A.at(i, 1) = A.at(i, 0);
  }
  const EmResult r = em_mixture_weights(A);
  CHECK_THAT(r.weights[0], WithinAbs(0.5, 1e-15));
  CHECK_THAT(r.weights[1], WithinAbs(0.5, 1e-15));
}

TEST_CASE("disjoint supports solve in one step") {
  HeldOutMatrix A(3, 2);
  A.at(0, 0) = 1.0;
  A.at(1, 1) = 1.0;
  A.at(2, 0) = 1.0;
  const EmResult r = em_mixture_weights(A);
  CHECK_THAT(r.weights[0], WithinAbs(2.0 / 3.0, 1e-12));
  CHECK_THAT(r.weights[1], WithinAbs(1.0 / 3.0, 1e-12));
  check_trace_nondecreasing(r);
}

TEST_CASE("all-zero rows are dropped") {
  HeldOutMatrix A(3, 2);
  A.at(1, 0) = 1.0;  // rows 0 and 2 are zero
  const EmResult r = em_mixture_weights(A);
  CHECK(r.rows_used == 1);
  CHECK(r.weights[0] == 1.0);
  CHECK(r.weights[1] == 0.0);
}

TEST_CASE("a matrix of zeros is an error") {
  HeldOutMatrix A(3, 2);
  CHECK_THROWS_AS(em_mixture_weights(A), numeric_error);
  CHECK_THROWS_WITH(em_mixture_weights(A),
                    Catch::Matchers::ContainsSubstring("no usable held-out points"));
}

TEST_CASE("negative or non-finite entries are rejected") {
  HeldOutMatrix A(1, 2);
  A.at(0, 0) = -0.5;
  A.at(0, 1) = 1.0;
  CHECK_THROWS_AS(em_mixture_weights(A), config_error);
}

TEST_CASE("weights stay convex and match a brute-force scan") {
  Rng rng = make_rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> rows(5, 50);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = rows(rng);
    HeldOutMatrix A(static_cast<std::size_t>(n), 2);
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < 2; ++m) {
        const double z = normal(rng);
        A.at(static_cast<std::size_t>(i), static_cast<std::size_t>(m)) =
            unif(rng) < 0.1 ? 0.0 : std::abs(z);
      }
    }
    bool any_usable = false;
    for (int i = 0; i < n; ++i)
      if (A.at(static_cast<std::size_t>(i), 0) > 0.0 ||
          A.at(static_cast<std::size_t>(i), 1) > 0.0)
        any_usable = true;
    if (!any_usable) continue;
    const EmResult r = em_mixture_weights(A);
    CHECK_THAT(r.weights[0] + r.weights[1], WithinAbs(1.0, 1e-12));
    CHECK(r.weights[0] >= 0.0);
    CHECK(r.weights[1] >= 0.0);
    check_trace_nondecreasing(r);
    CHECK_THAT(r.weights[0], WithinAbs(oracles::em_bruteforce_alpha1(A), 0.01));
  }
}

TEST_CASE("tolerance and iteration caps are validated") {
  HeldOutMatrix A(1, 1);
  A.at(0, 0) = 1.0;
  CHECK_THROWS_AS(em_mixture_weights(A, 0.0), config_error);
  CHECK_THROWS_AS(em_mixture_weights(A, 1e-8, 0), config_error);
}
