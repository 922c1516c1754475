#pragma once

#include <array>
#include <cstdint>

namespace hitting {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Maps a 128-bit counter and a 64-bit key to four 32-bit outputs.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Random stream number `stream` under `seed`. Draw k of the stream is
/// derived from block k/2 of the counter (stream_lo, stream_hi, block_lo,
/// block_hi) under key (seed_lo, seed_hi): each block gives two 64-bit
/// words, low word pair first. The same (seed, stream) always yields the
/// same sequence, independent of any other stream.
class CounterStream {
  public:
    CounterStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double next_unit();
    /// Uniform on (0, 1].
    double next_unit_open_low() { return 1.0 - next_unit(); }

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 2;
};

} // namespace hitting
