#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace sdmt {

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel Random
// Numbers: As Easy as 1, 2, 3", SC'11).  A (seed, stream) pair names an
// independent random stream; advancing is a 64-bit block-counter increment,
// so Monte Carlo workers get disjoint, reproducible streams with no shared
// state.  Identical (seed, stream) yields a bitwise-identical sequence.
class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on (0, 1]; never returns 0, so log(uniform()) is safe.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double gaussian();
  std::complex<double> complex_gaussian();  // circularly symmetric CN(0, 1)

  // One Philox block: the raw 4x32-bit output for (counter, stream, key).
  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 4>& counter,
      const std::array<std::uint32_t, 2>& key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sdmt
