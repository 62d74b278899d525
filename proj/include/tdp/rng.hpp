#ifndef TDP_RNG_HPP
#define TDP_RNG_HPP

#include <cstdint>
#include <random>

namespace tdp {

// mt19937_64 output is pinned by the standard, but std:: distributions are
// implementation-defined. These helpers keep generated streams byte-identical
// across platforms and library versions.

inline double rng_unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double rng_uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * rng_unit(rng);
}

// Uniform integer in [lo, hi], inclusive.
inline std::int64_t rng_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % range);
}

} // namespace tdp

#endif
