#pragma once

// The 4-element symmetry group of binary strings: identity, reversal,
// complementation and reversal after complementation.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>

#include "bits.hpp"
#include "errors.hpp"
#include "pattern_distribution.hpp"

namespace algoprob {

struct SymmetryOrbit {
    BitString canonical;
    std::set<BitString> members;

    friend bool operator==(const SymmetryOrbit&, const SymmetryOrbit&) = default;
};

inline SymmetryOrbit orbit(const BitString& s) {
    if (s.empty()) throw ParameterError("orbit of the empty string is undefined");
    require_bitstring(s, "orbit");
    SymmetryOrbit o;
    o.members = {s, reversed(s), complemented(s), complemented(reversed(s))};
    o.canonical = *o.members.begin();
    return o;
}

inline BitString canonical(const BitString& s) { return orbit(s).canonical; }

inline constexpr std::uint32_t kMaxBurnsideLength = 62;

// Orbits of length-n strings: (|Fix id| + |Fix re| + |Fix co| + |Fix re.co|) / 4
// with 2^n, 2^ceil(n/2), 0, and 2^(n/2) for even n (0 for odd n).
inline std::uint64_t burnside_count(std::uint32_t n) {
    if (n < 1) throw ParameterError("length must be >= 1");
    if (n > kMaxBurnsideLength) throw RangeError("burnside_count overflows 64-bit arithmetic beyond n = 62");
    const std::uint64_t all = 1ULL << n;
    if (n % 2 == 0) return (all + (1ULL << (n / 2 + 1))) / 4;
    return (all + (1ULL << ((n + 1) / 2))) / 4;
}

// Counts of every orbit member summed under the canonical representative.
inline PatternDistribution collapse_by_symmetry(const PatternDistribution& d) {
    PatternDistribution out;
    out.source = d.source;
    out.source["collapsed"] = "symmetry";
    out.seed = d.seed;
    out.total_runs = d.total_runs;
    out.contributing_runs = d.contributing_runs;
    for (const auto& [s, c] : d.counts()) out.add(canonical(s), c);
    return out;
}

} // namespace algoprob
