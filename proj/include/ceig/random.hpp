#pragma once

#include <cstdint>
#include <string_view>

#include "ceig/linalg.hpp"

namespace ceig {

/// SplitMix64 finalizer. Used both as the stream step and as a seed mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept
{
    return mix64(seed + 0x9e3779b97f4a7c15ULL + mix64(value));
}

/// FNV-1a, 64 bit.
constexpr std::uint64_t hash_string(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Portable seeded stream: SplitMix64 state walk, 53-bit uniforms, Box-Muller normals.
/// The standard <random> distributions are implementation-defined, so they are not used.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double gaussian() noexcept;

    /// Uniformly distributed point on the unit sphere in R^n.
    Vector unit_vector(std::size_t n);

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace ceig
