// The amalgamated Catch2 translation unit supplies main(); this file only
// anchors a trivial sanity check so an empty test binary cannot pass silently.

#include <catch2/catch_amalgamated.hpp>

#include "logder/logder.hpp"

TEST_CASE("library headers compile and link", "[smoke]") {
  const logder::Rational half(1, 2);
  REQUIRE(half + half == 1);
}
