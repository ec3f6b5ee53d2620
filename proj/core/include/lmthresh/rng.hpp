#pragma once

#include <cstdint>

namespace lmthresh {

// Counter-based uniform generator. The value at position `counter` of stream
// `stream` under key `seed` is a pure function of the three integers, so
// independent streams (one per replication) can be generated in any order
// or on any thread and still give identical draws.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : base_(mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    // 64 random bits at an explicit position.
    [[nodiscard]] std::uint64_t bits_at(std::uint64_t counter) const noexcept {
        return mix(base_ + (counter + 1) * kGolden);
    }

    // Uniform on the open interval (0, 1) at an explicit position.
    [[nodiscard]] double uniform_at(std::uint64_t counter) const noexcept {
        return (static_cast<double>(bits_at(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    [[nodiscard]] double next_uniform() noexcept { return uniform_at(counter_++); }

    [[nodiscard]] std::uint64_t position() const noexcept { return counter_; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace lmthresh
