#include "fluidq/rng.hpp"

#include <cmath>
#include <numbers>

namespace fluidq {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

inline double to_unit_open_closed(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * kTwoPow53Inv;  // (0, 1]
}

inline double to_unit_closed_open(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * kTwoPow53Inv;  // [0, 1)
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::array<std::uint32_t, 4> CounterRng::next_block() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                             static_cast<std::uint32_t>(seed_ >> 32)};
  ++block_;
  return philox4x32_10(ctr, key);
}

double CounterRng::uniform() {
  const auto b = next_block();
  return to_unit_closed_open((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const auto b = next_block();
  const double u1 = to_unit_open_closed((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
  const double u2 = to_unit_closed_open((static_cast<std::uint64_t>(b[2]) << 32) | b[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

void CounterRng::fill_normal(std::span<double> out) {
  for (double& v : out) v = normal();
}

}  // namespace fluidq
