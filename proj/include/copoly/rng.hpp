#pragma once

#include <cstdint>

namespace copoly {

// Counter-based generator: every value is a pure function of
// (master seed, stream, index), so parallel sampling is order-independent
// and bit-reproducible across thread counts.
namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t k = mix64(master ^ 0x243f6a8885a308d3ULL);
    k = mix64(k + 0x13198a2e03707344ULL * stream);
    return mix64(k + 0xa4093822299f31d0ULL * index);
}

// uniform in (0,1), 53-bit resolution, never exactly 0 or 1
inline double uniform01(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t u = derive(master, stream, index);
    return ((u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// inverse of the standard normal CDF (Wichura's PPND16, ~1e-15 accurate)
double normal_inv_cdf(double p);

inline double normal(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return normal_inv_cdf(uniform01(master, stream, index));
}

} // namespace rng
} // namespace copoly
