#include "sdmt/rng.hpp"

#include <cmath>
#include <numbers>

namespace sdmt {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c,
                       const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> PhiloxRng::block(
    const std::array<std::uint32_t, 4>& counter,
    const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  round_once(c, k);
  for (int r = 1; r < 10; ++r) {
    k[0] += kWeyl0;
    k[1] += kWeyl1;
    round_once(c, k);
  }
  return c;
}

void PhiloxRng::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_),
      static_cast<std::uint32_t>(block_ >> 32), stream_[0], stream_[1]};
  buf_ = block(counter, key_);
  ++block_;
  pos_ = 0;
}

double PhiloxRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_gaussian_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> PhiloxRng::complex_gaussian() {
  // Real and imaginary parts are N(0, 1/2) so that E|z|^2 = 1.
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const double re = gaussian();
  const double im = gaussian();
  return {re * inv_sqrt2, im * inv_sqrt2};
}

}  // namespace sdmt
