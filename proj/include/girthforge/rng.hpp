#ifndef GIRTHFORGE_RNG_HPP
#define GIRTHFORGE_RNG_HPP

#include <cstdint>

namespace girthforge::rng {

// Counter-based randomness: every decision is a pure function of
// (seed, counter), so sampling is order-independent and safe to
// evaluate from parallel workers.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(seed ^ splitmix64(counter + 0x9e3779b97f4a7c15ULL));
}

// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double unit(std::uint64_t seed, std::uint64_t counter) {
    return to_unit(mix(seed, counter));
}

// Distinct stream tags keep unrelated consumers of the same run seed
// from ever sharing a counter sequence.
inline constexpr std::uint64_t kStreamTrial = 0x7261696cULL;
inline constexpr std::uint64_t kStreamAlt = 0x616c7432ULL;
inline constexpr std::uint64_t kStreamSets = 0x73657473ULL;
inline constexpr std::uint64_t kStreamPick = 0x7069636bULL;

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
    return mix(mix(seed, stream), index);
}

} // namespace girthforge::rng

#endif
