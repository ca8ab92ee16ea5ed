#pragma once

// Rank correlation between two pattern distributions: Spearman's rho with
// average ranks for ties, and a seeded two-sided permutation test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "pattern_distribution.hpp"
#include "rng.hpp"

namespace algoprob {

enum class SupportPolicy { Intersection, UnionWithZeros };

inline std::string to_string(SupportPolicy p) {
    return p == SupportPolicy::Intersection ? "intersection" : "union";
}

inline constexpr std::size_t kMinPairs = 3;

struct AlignedPairs {
    std::vector<BitString> strings;  // lexicographic
    std::vector<double> a;
    std::vector<double> b;
};

inline AlignedPairs align(const PatternDistribution& a, const PatternDistribution& b, std::size_t k,
                          SupportPolicy policy) {
    auto of_length = [k](const PatternDistribution& d) {
        std::set<BitString> s;
        for (const auto& [str, c] : d.counts())
            if (str.size() == k) s.insert(str);
        return s;
    };
    const auto sa = of_length(a), sb = of_length(b);
    std::vector<BitString> shared;
    if (policy == SupportPolicy::Intersection)
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
    else
        std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
    if (shared.size() < kMinPairs)
        throw InsufficientSupportError("only " + std::to_string(shared.size()) + " length-" + std::to_string(k) +
                                       " strings to pair under " + to_string(policy) + " (need >= 3)");
    AlignedPairs out;
    out.strings = std::move(shared);
    for (const auto& s : out.strings) {
        out.a.push_back(a.frequency(s));
        out.b.push_back(b.frequency(s));
    }
    return out;
}

// Ranks in descending order of value (largest = 1); tied values share the
// average of the ranks they span.
inline std::vector<double> descending_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] > v[j]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ParameterError("vectors differ in length");
    if (x.size() < kMinPairs) throw ParameterError("rank correlation needs at least 3 pairs");
}

// Pearson correlation of two rank vectors.
inline double pearson(std::span<const double> rx, std::span<const double> ry) {
    const double n = static_cast<double>(rx.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("a vector has zero rank variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace detail

inline double spearman(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    const auto rx = descending_ranks(x), ry = descending_ranks(y);
    return detail::pearson(rx, ry);
}

// Two-sided: p = (1 + #{|rho*| >= |rho|}) / (permutations + 1), where each rho*
// correlates x with a Fisher-Yates shuffle of y drawn from substream
// (seed, shuffle index).
inline double permutation_pvalue(std::span<const double> x, std::span<const double> y, std::uint64_t permutations,
                                 std::uint64_t seed, unsigned workers = 1) {
    detail::check_pair(x, y);
    if (permutations < 1) throw ParameterError("permutations must be >= 1");
    const auto rx = descending_ranks(x);
    const auto ry = descending_ranks(y);
    const double observed = std::abs(detail::pearson(rx, ry));
    // Ranks of a permuted y are the permuted ranks of y. The 1e-12 slack keeps
    // shuffles that tie the observed |rho| from being lost to rounding.
    const double threshold = observed - 1e-12;

    const std::uint64_t extreme = parallel_reduce<std::uint64_t>(
        permutations, 256, workers, [] { return std::uint64_t{0}; },
        [&](std::uint64_t& acc, std::uint64_t begin, std::uint64_t end) {
            std::vector<double> shuffled(ry.size());
            for (std::uint64_t p = begin; p < end; ++p) {
                std::copy(ry.begin(), ry.end(), shuffled.begin());
                auto eng = make_substream(seed, p);
                for (std::size_t i = shuffled.size() - 1; i > 0; --i)
                    std::swap(shuffled[i], shuffled[uniform_below(eng, i + 1)]);
                if (std::abs(detail::pearson(rx, shuffled)) >= threshold) ++acc;
            }
        },
        [](std::uint64_t& into, std::uint64_t&& part) { into += part; });
    return static_cast<double>(1 + extreme) / static_cast<double>(permutations + 1);
}

struct CorrelationReport {
    std::size_t k = 0;
    SupportPolicy policy = SupportPolicy::Intersection;
    std::size_t pair_count = 0;
    double rho = 0.0;
    double p_value = 1.0;
    std::uint64_t permutations = 0;
    std::uint64_t seed = 0;
    Provenance source_a;
    Provenance source_b;
    AlignedPairs pairs;
};

inline CorrelationReport compare_report(const PatternDistribution& a, const PatternDistribution& b, std::size_t k,
                                        SupportPolicy policy, std::uint64_t permutations, std::uint64_t seed,
                                        unsigned workers = 1) {
    CorrelationReport r;
    r.k = k;
    r.policy = policy;
    r.permutations = permutations;
    r.seed = seed;
    r.source_a = a.source;
    r.source_b = b.source;
    r.pairs = align(a, b, k, policy);
    r.pair_count = r.pairs.strings.size();
    r.rho = spearman(r.pairs.a, r.pairs.b);
    // The shuffled side is the one with the lexicographically larger rank
    // vector, so compare_report(a, b) and compare_report(b, a) draw the same
    // permutations against the same vector.
    const auto ra = descending_ranks(r.pairs.a), rb = descending_ranks(r.pairs.b);
    r.p_value = ra <= rb ? permutation_pvalue(r.pairs.a, r.pairs.b, permutations, seed, workers)
                         : permutation_pvalue(r.pairs.b, r.pairs.a, permutations, seed, workers);
    return r;
}

} // namespace algoprob
