#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace algoprob {

// Key/value description of where a distribution came from, e.g.
// {"kind": "tm", "states": "2", "cap": "1000", "init": "blank"}.
using Provenance = std::map<std::string, std::string>;

// Provenance key that identifies a shard of a larger computation. It is the
// only key allowed to differ between merged distributions.
inline constexpr std::string_view kShardKey = "shard";

struct DistributionEntry {
    BitString string;
    std::uint64_t count = 0;
    double frequency = 0.0;
};

// Frequency distribution over binary strings. Counts are the ground truth;
// frequencies are always derived as count / total_count().
class PatternDistribution {
public:
    Provenance source;
    std::optional<std::uint64_t> seed;
    std::uint64_t total_runs = 0;
    std::uint64_t contributing_runs = 0;

    void add(const BitString& s, std::uint64_t count = 1) {
        if (count == 0) return;
        counts_[s] += count;
        total_ += count;
    }

    const std::map<BitString, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t total_count() const noexcept { return total_; }
    std::size_t size() const noexcept { return counts_.size(); }
    bool empty() const noexcept { return counts_.empty(); }

    bool contains(const BitString& s) const { return counts_.count(s) != 0; }

    std::uint64_t count(const BitString& s) const {
        const auto it = counts_.find(s);
        return it == counts_.end() ? 0 : it->second;
    }

    double frequency(const BitString& s) const {
        return total_ == 0 ? 0.0 : static_cast<double>(count(s)) / static_cast<double>(total_);
    }

    // Canonical order: length ascending, frequency descending, then lexicographic.
    std::vector<DistributionEntry> entries() const {
        std::vector<DistributionEntry> out;
        out.reserve(counts_.size());
        for (const auto& [s, c] : counts_) out.push_back({s, c, static_cast<double>(c) / static_cast<double>(total_)});
        std::sort(out.begin(), out.end(), [](const DistributionEntry& a, const DistributionEntry& b) {
            if (a.string.size() != b.string.size()) return a.string.size() < b.string.size();
            if (a.count != b.count) return a.count > b.count;
            return a.string < b.string;
        });
        return out;
    }

    // Entries of one string length, as a view recomputed from the counts.
    std::vector<DistributionEntry> entries_of_length(std::size_t length) const {
        auto all = entries();
        std::erase_if(all, [&](const DistributionEntry& e) { return e.string.size() != length; });
        return all;
    }

    friend bool operator==(const PatternDistribution& a, const PatternDistribution& b) {
        return a.source == b.source && a.seed == b.seed && a.total_runs == b.total_runs &&
               a.contributing_runs == b.contributing_runs && a.counts_ == b.counts_;
    }

private:
    std::map<BitString, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

inline bool same_source_except_shard(const Provenance& a, const Provenance& b) {
    auto strip = [](Provenance p) {
        p.erase(std::string(kShardKey));
        return p;
    };
    return strip(a) == strip(b);
}

// Pointwise sum of counts and run totals. The shard key is dropped.
inline PatternDistribution merge(const PatternDistribution& a, const PatternDistribution& b) {
    if (!same_source_except_shard(a.source, b.source)) throw MergeError("cannot merge distributions from different sources");
    if (a.seed != b.seed) throw MergeError("cannot merge distributions with different seeds");
    PatternDistribution out;
    out.source = a.source;
    out.source.erase(std::string(kShardKey));
    out.seed = a.seed;
    out.total_runs = a.total_runs + b.total_runs;
    out.contributing_runs = a.contributing_runs + b.contributing_runs;
    for (const auto& [s, c] : a.counts()) out.add(s, c);
    for (const auto& [s, c] : b.counts()) out.add(s, c);
    return out;
}

// -log2 of the observed frequency of s, in bits.
inline double ctm_complexity(const PatternDistribution& d, const BitString& s) {
    if (!d.contains(s)) throw NotObservedError("string \"" + s + "\" was not observed in the distribution");
    return -std::log2(d.frequency(s));
}

// 1-based position of s when entries are ordered by frequency descending,
// ties broken lexicographically. With length_restricted only strings of
// length |s| take part.
inline std::uint64_t rank_of(const PatternDistribution& d, const BitString& s, bool length_restricted) {
    const std::uint64_t c = d.count(s);
    if (c == 0) throw NotObservedError("string \"" + s + "\" was not observed in the distribution");
    std::uint64_t rank = 1;
    for (const auto& [t, tc] : d.counts()) {
        if (length_restricted && t.size() != s.size()) continue;
        if (tc > c || (tc == c && t < s)) ++rank;
    }
    return rank;
}

enum class Windowing { Overlapping, Disjoint };

// Adds every k-window of `row` to `d`. Disjoint blocking discards the
// remainder. Returns the number of windows added.
inline std::uint64_t count_windows(PatternDistribution& d, std::string_view row, std::size_t k, Windowing mode) {
    if (k == 0) throw ParameterError("k must be >= 1");
    if (k > row.size())
        throw ParameterError("k = " + std::to_string(k) + " exceeds row width " + std::to_string(row.size()));
    const std::size_t stride = mode == Windowing::Overlapping ? 1 : k;
    std::uint64_t windows = 0;
    for (std::size_t i = 0; i + k <= row.size(); i += stride, ++windows) d.add(BitString(row.substr(i, k)));
    return windows;
}

inline std::string to_string(Windowing w) { return w == Windowing::Overlapping ? "overlap" : "disjoint"; }

} // namespace algoprob
