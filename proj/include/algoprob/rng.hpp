#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace algoprob {

// All pseudorandomness goes through std::mt19937_64. Its output sequence is
// fixed by the standard, so seeded results are identical across platforms.
// Values are derived from raw 64-bit draws only; the std distributions are
// implementation-defined and are never used.
using Engine = std::mt19937_64;

// splitmix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

// Independent substream `index` of `seed`.
inline Engine make_substream(std::uint64_t seed, std::uint64_t index) {
    return Engine{mix64(seed ^ mix64(index + 1))};
}

// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = eng();
    } while (x > limit);
    return x % bound;
}

// `length` fair bits as a '0'/'1' string, 64 bits per draw, LSB first.
inline std::string random_bits(Engine& eng, std::size_t length) {
    std::string out(length, '0');
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i % 64 == 0) word = eng();
        out[i] = static_cast<char>('0' + (word & 1U));
        word >>= 1;
    }
    return out;
}

inline std::string random_bits(std::uint64_t seed, std::size_t length) {
    auto eng = make_engine(seed);
    return random_bits(eng, length);
}

} // namespace algoprob
