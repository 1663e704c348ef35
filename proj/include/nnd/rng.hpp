// Deterministic pseudo-random streams shared by every stochastic component.
//
// Generator: xoshiro256++ (Blackman & Vigna). State derivation from a seed is
// a pure function so results are reproducible across runs and machines:
//
//   z        = mix64(mix64(master_seed) ^ stream_id)
//   state[i] = splitmix64 sequence started at z, i = 0..3
//
// where mix64 is one splitmix64 step. Gaussian deviates use the Marsaglia
// polar method (sqrt/log only, no trigonometry), uniform doubles take the top
// 53 bits of one 64-bit output.

#pragma once

#include <cstdint>

namespace nnd {

// Identifies one reproducible random stream. Distinct stream_ids under the
// same master seed give statistically independent sequences.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

// One splitmix64 step; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Child stream addressed by `salt`. Pure function; never touches generator
// state, so callers can derive per-trial/per-round streams up front and
// consume them in any order.
constexpr SeedSpec substream(const SeedSpec& s, std::uint64_t salt) noexcept {
    return SeedSpec{s.master_seed, mix64(s.stream_id ^ mix64(salt ^ 0x6a09e667f3bcc909ull))};
}

class Rng {
public:
    explicit Rng(SeedSpec seed) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform on [0,1) with 53-bit resolution.
    double uniform01() noexcept;

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept;

    // Unbiased integer in [0, n); n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t bounded(std::uint64_t n) noexcept;

    // Standard normal deviate. The polar method produces deviates in pairs;
    // the spare is cached, so the draw sequence depends only on the seed and
    // the number of calls.
    double normal() noexcept;

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace nnd
