#pragma once

#include <cstdint>

namespace qw {

// 64-bit avalanche mix (the splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Counter-based uniform stream. Draw t is a pure function of
// (master_seed, stream_index, t), so realizations can run on any thread in
// any order and still consume exactly the same numbers.
class CounterStream {
public:
    CounterStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : stream_(mix64(master_seed + kGamma * (stream_index + 1))) {}

    // Uniform double in [0, 1); consumes one counter position.
    double next() { return at_counter(counter_++); }

    // Random-access draw without advancing the stream.
    double at_counter(std::uint64_t t) const {
        const std::uint64_t v = mix64(stream_ + kGamma * (t + 1));
        return static_cast<double>(v >> 11) * 0x1.0p-53;
    }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace qw
