#include "hitting/random.hpp"

namespace hitting {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

std::uint64_t CounterStream::next_u64() {
    if (used_ == 2) {
        buffer_ = philox4x32_10({static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
                                 static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32)},
                                key_);
        ++block_;
        used_ = 0;
    }
    const std::uint64_t lo = buffer_[2 * used_];
    const std::uint64_t hi = buffer_[2 * used_ + 1];
    ++used_;
    return (hi << 32) | lo;
}

double CounterStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

} // namespace hitting
