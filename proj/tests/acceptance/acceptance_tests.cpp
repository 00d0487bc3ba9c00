#include <catch2/catch_amalgamated.hpp>

#include "densemble/densemble.hpp"

TEST_CASE("placeholder") { CHECK(true); }
