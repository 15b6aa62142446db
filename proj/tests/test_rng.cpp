#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fluidq/rng.hpp"

using namespace fluidq;

TEST_CASE("philox4x32_10 known-answer vectors", "[rng]") {
  using C = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  REQUIRE(philox4x32_10(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  REQUIRE(philox4x32_10(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  REQUIRE(philox4x32_10(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("CounterRng is a pure function of seed and stream", "[rng]") {
  CounterRng a(42, derive_stream(3, 9)), b(42, derive_stream(3, 9)), c(42, derive_stream(3, 10));
  std::vector<double> va(257), vb(257), vc(257);
  a.fill_normal(va);
  b.fill_normal(vb);
  c.fill_normal(vc);
  REQUIRE(va == vb);
  REQUIRE(va != vc);
  REQUIRE(a.blocks_used() == b.blocks_used());
  REQUIRE(derive_stream(1, 0) != derive_stream(0, 1));
}

TEST_CASE("CounterRng moments", "[rng]") {
  CounterRng rng(7, 0);
  const std::size_t n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  REQUIRE(std::abs(su / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  REQUIRE(std::abs(sn / n) < 4.0 / std::sqrt(double(n)));
  REQUIRE(std::abs(sn2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
