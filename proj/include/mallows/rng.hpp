#pragma once

#include <cstdint>
#include <limits>

namespace mallows {

// SplitMix64 (Steele, Lea & Flood 2014; constants from Vigna's reference
// implementation at https://prng.di.unimi.it/splitmix64.c).
//
// The whole repo draws randomness through this engine so that a seed means
// the same thing in any language: state advances by the golden-gamma
// constant and each output is the standard 64-bit finalizer of the state.
//
// Independent substreams are keyed by (seed, index):
//   stream_seed(seed, index) = mix64(mix64(seed) ^ mix64(index + kStreamSalt))
// and a substream is SplitMix64(stream_seed(seed, index)).
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;
    static constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ull;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
        return mix64(mix64(seed) ^ mix64(index + kStreamSalt));
    }

    static constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
        return SplitMix64(stream_seed(seed, index));
    }

    constexpr std::uint64_t operator()() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return std::numeric_limits<std::uint64_t>::max(); }

    // Uniform double in [0, 1) from the top 53 bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Lemire's multiply-shift with rejection,
    // so the result is exactly uniform and reproducible across platforms.
    std::uint64_t uniform_below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        for (;;) {
            const unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
            const auto low = static_cast<std::uint64_t>(product);
            if (low >= bound || low >= (-bound) % bound) {
                return static_cast<std::uint64_t>(product >> 64);
            }
        }
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

  private:
    std::uint64_t state_;
};

} // namespace mallows
