#include <catch2/catch_amalgamated.hpp>

#include "densemble/rng.hpp"

using namespace densemble;

TEST_CASE("derive_seed separates sub-streams") {
  const std::uint64_t base = 42;
  CHECK(derive_seed(base, 0ULL) != derive_seed(base, 1ULL));
  CHECK(derive_seed(base, 0ULL, 0ULL) != derive_seed(base, 0ULL, 1ULL));
  CHECK(derive_seed(base, 1ULL, 0ULL) != derive_seed(base, 0ULL, 1ULL));
  CHECK(derive_seed(base) == derive_seed(base));
}

TEST_CASE("derive_seed is order sensitive") {
  CHECK(derive_seed(7, 1ULL, 2ULL) != derive_seed(7, 2ULL, 1ULL));
}

TEST_CASE("fnv1a64 distinguishes labels") {
  CHECK(fnv1a64("BagHist") != fnv1a64("AggregHist"));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("make_rng reproduces streams") {
  Rng a = make_rng(123);
  Rng b = make_rng(123);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  Rng c = make_rng(124);
  CHECK(make_rng(123)() != c());
}
