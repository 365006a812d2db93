#pragma once

// Portable seeded random numbers.
//
// The standard <random> distributions are implementation-defined, so the same
// seed gives different streams on libstdc++ and libc++. Everything here is
// spelled out so that runs are bit-identical across platforms:
//
//   engine        xoshiro256** (Blackman & Vigna), state seeded by SplitMix64
//   uniform01     top 53 bits of a draw scaled by 2^-53, in [0, 1)
//   below(n)      x mod n, rejecting the 2^64 mod n lowest draws
//   normal        Box-Muller, both halves used
//   derive_seed   SplitMix64(master ^ SplitMix64(index + golden gamma))

#include <array>
#include <cstdint>
#include <optional>

namespace pathlaw {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Seed for replicate `index` of an ensemble started from `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;
    std::uint64_t operator()() noexcept { return next(); }
    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    // Uniform in [0, 1).
    double uniform01() noexcept;
    // Uniform in (0, 1), never exactly zero.
    double uniform_open() noexcept;
    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;
    bool bernoulli(double p) noexcept { return uniform01() < p; }
    double normal() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
    std::optional<double> spare_normal_;
};

} // namespace pathlaw
