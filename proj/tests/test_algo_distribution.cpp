#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "algoprob/algo_distribution.hpp"
#include "algoprob/io.hpp"
#include "oracle.hpp"

using namespace algoprob;

namespace {

double frequency_sum(const PatternDistribution& d) {
    double sum = 0;
    for (const auto& e : d.entries()) sum += e.frequency;
    return sum;
}

PatternDistribution d1() { return build_distribution(1, 10, InitMode::blank(), std::nullopt); }

PatternDistribution from_counts(std::initializer_list<std::pair<const char*, std::uint64_t>> counts) {
    PatternDistribution d;
    d.source = {{"kind", "test"}};
    for (const auto& [s, c] : counts) d.add(s, c);
    d.total_runs = d.contributing_runs = d.total_count();
    return d;
}

} // namespace

TEST(BuildDistribution, OneStateBlankTape) {
    const auto d = d1();
    EXPECT_EQ(d.total_runs, 64U);
    EXPECT_EQ(d.contributing_runs, 32U);
    ASSERT_EQ(d.size(), 2U);
    EXPECT_DOUBLE_EQ(d.frequency("0"), 0.5);
    EXPECT_DOUBLE_EQ(d.frequency("1"), 0.5);
    EXPECT_EQ(d.source.at("states"), "1");
    EXPECT_EQ(d.source.at("init"), "blank");
    EXPECT_FALSE(d.seed.has_value());
}

// Counts frozen from oracle::census(2, 1000).
TEST(BuildDistribution, TwoStatesMatchesFrozenOracle) {
    const std::map<std::string, std::uint64_t> expected{
        {"0", 3456}, {"00", 728}, {"001", 4}, {"01", 704}, {"010", 4},  {"011", 8},  {"1", 3456},   {"10", 704}, {"100", 4},
        {"1001", 4}, {"101", 4},  {"1011", 4}, {"11", 680}, {"110", 8}, {"1101", 4}, {"111", 8}, {"1111", 4}};
    const auto d = build_distribution(2, 1000, InitMode::blank(), std::nullopt);
    EXPECT_EQ(d.counts(), expected);
    EXPECT_EQ(d.contributing_runs, 9784U);
    EXPECT_EQ(d.total_runs, 20736U);
}

TEST(BuildDistribution, TwoStatesMatchesLiveOracle) {
    const auto c = oracle::census(2, 20);
    const auto d = build_distribution(2, 20, InitMode::blank(), std::nullopt);
    std::map<std::string, std::uint64_t> expected;
    for (const auto& [s, k] : c.outputs) expected[s] = static_cast<std::uint64_t>(k);
    EXPECT_EQ(d.counts(), expected);
}

TEST(BuildDistribution, ContributingRunsEqualsBusyBeaverHalters) {
    const auto d = build_distribution(2, 6, InitMode::blank(), std::nullopt);
    EXPECT_NEAR(frequency_sum(d), 1.0, 1e-12);
    EXPECT_EQ(d.contributing_runs, busy_beaver_search(2, 6).halting_count);
}

TEST(BuildDistribution, RandomSegmentIsSeededAndDeterministic) {
    const auto a = build_distribution(1, 10, InitMode::random_segment(4, 2), 42);
    const auto b = build_distribution(1, 10, InitMode::random_segment(4, 2), 42);
    EXPECT_EQ(serialize(a), serialize(b));
    EXPECT_EQ(a.seed, std::optional<std::uint64_t>(42));
    EXPECT_EQ(a.total_runs, 128U);
    EXPECT_NEAR(frequency_sum(a), 1.0, 1e-12);
}

TEST(BuildDistribution, RandomSegmentMatchesDirectRuns) {
    const InitMode init = InitMode::random_segment(5, 3);
    const auto d = build_distribution(2, 30, init, 9);
    PatternDistribution expected;
    for (const auto& tape : random_segment_tapes(init.segment, 9))
        for (std::uint64_t i = 0; i < space_size(2); ++i) {
            const auto r = run_reference(decode_machine(i, 2), tape, 30);
            if (r.status == RunStatus::Halted) expected.add(r.output);
        }
    EXPECT_EQ(d.counts(), expected.counts());
}

TEST(BuildDistribution, RandomSegmentRequiresSeedAndSizes) {
    EXPECT_THROW(build_distribution(1, 10, InitMode::random_segment(4, 2), std::nullopt), ParameterError);
    EXPECT_THROW(build_distribution(1, 10, InitMode::random_segment(0, 2), 1), ParameterError);
    EXPECT_THROW(build_distribution(1, 10, InitMode::random_segment(4, 0), 1), ParameterError);
}

TEST(BuildDistribution, CapacityError) {
    EXPECT_THROW(build_distribution(5, 10, InitMode::blank(), std::nullopt), CapacityError);
}

TEST(BuildDistribution, IndependentOfWorkersChunkingAndMirrorReduction) {
    const auto base = serialize(build_distribution(2, 100, InitMode::blank(), std::nullopt));
    for (unsigned w : {1U, 2U, 8U})
        for (bool mirrored : {false, true})
            for (std::uint64_t chunk : {97ULL, 4096ULL, 1ULL << 16}) {
                EnumerationOptions opts;
                opts.workers = w;
                opts.mirror_reduction = mirrored;
                opts.chunk_size = chunk;
                ASSERT_EQ(serialize(build_distribution(2, 100, InitMode::blank(), std::nullopt, opts)), base);
            }
}

TEST(BuildDistribution, MirrorClosureExhaustive) {
    for (std::uint32_t n : {1U, 2U}) {
        const auto d = build_distribution(n, 1000, InitMode::blank(), std::nullopt);
        for (const auto& [s, c] : d.counts()) ASSERT_EQ(d.count(reversed(s)), c) << s;
    }
}

TEST(BuildDistribution, TwoStateLengthTwoIsNotUniform) {
    const auto len2 = build_distribution(2, 1000, InitMode::blank(), std::nullopt).entries_of_length(2);
    ASSERT_EQ(len2.size(), 4U);
    EXPECT_GT(len2.front().frequency, len2.back().frequency);
}

TEST(Merge, EmptyShardIsIdentity) {
    const auto d = d1();
    PatternDistribution empty;
    empty.source = d.source;
    EXPECT_EQ(merge(d, empty), d);
    EXPECT_EQ(merge(empty, d), d);
}

TEST(Merge, Commutative) {
    std::mt19937_64 eng(5);
    for (int t = 0; t < 50; ++t) {
        PatternDistribution a, b;
        a.source = b.source = {{"kind", "test"}};
        for (int i = 0; i < 20; ++i) {
            a.add(std::to_string(eng() % 2) + std::to_string(eng() % 2), 1 + eng() % 5);
            b.add(std::to_string(eng() % 2), 1 + eng() % 5);
        }
        a.total_runs = 30;
        b.total_runs = 40;
        EXPECT_EQ(merge(a, b), merge(b, a));
    }
}

TEST(Merge, HalvesOfOneStateSpaceEqualWhole) {
    const InitMode blank = InitMode::blank();
    const auto lo = build_distribution_shard(1, 10, blank, std::nullopt, 0, 32);
    const auto hi = build_distribution_shard(1, 10, blank, std::nullopt, 32, 64);
    EXPECT_NE(lo.source, hi.source);
    EXPECT_EQ(merge(lo, hi), d1());
}

TEST(Merge, IncompatibleSourcesRejected) {
    const auto a = d1();
    auto b = build_distribution(2, 10, InitMode::blank(), std::nullopt);
    EXPECT_THROW(merge(a, b), MergeError);
    auto c = a;
    c.seed = 3;
    EXPECT_THROW(merge(a, c), MergeError);
}

TEST(Complexity, OneStateStrings) {
    const auto d = d1();
    EXPECT_DOUBLE_EQ(ctm_complexity(d, "0"), 1.0);
    EXPECT_THROW(ctm_complexity(d, "01"), NotObservedError);
}

TEST(Complexity, ModalStringIsMinimal) {
    const auto d = build_distribution(2, 1000, InitMode::blank(), std::nullopt);
    const auto modal = d.entries().front().string;
    for (const auto& [s, c] : d.counts()) {
        EXPECT_LE(ctm_complexity(d, modal), ctm_complexity(d, s));
        EXPECT_GE(ctm_complexity(d, s), 0.0);
    }
}

TEST(Complexity, StrictlyDecreasingInFrequency) {
    const auto d = from_counts({{"00", 5}, {"01", 3}, {"1", 1}});
    EXPECT_LT(ctm_complexity(d, "00"), ctm_complexity(d, "01"));
    EXPECT_LT(ctm_complexity(d, "01"), ctm_complexity(d, "1"));
}

TEST(Rank, TieBrokenLexicographically) {
    const auto d = d1();
    EXPECT_EQ(rank_of(d, "0", false), 1U);
    EXPECT_EQ(rank_of(d, "1", false), 2U);
    EXPECT_THROW(rank_of(d, "11", false), NotObservedError);
}

TEST(Rank, SingletonAndScaleInvariance) {
    EXPECT_EQ(rank_of(from_counts({{"0110", 7}}), "0110", true), 1U);
    const auto a = from_counts({{"00", 5}, {"01", 3}, {"10", 3}, {"1", 9}});
    const auto b = from_counts({{"00", 50}, {"01", 30}, {"10", 30}, {"1", 90}});
    for (const auto& s : {"00", "01", "10", "1"})
        for (bool restricted : {false, true}) EXPECT_EQ(rank_of(a, s, restricted), rank_of(b, s, restricted));
    EXPECT_EQ(rank_of(a, "01", false), 3U);
    EXPECT_EQ(rank_of(a, "01", true), 2U);
}

TEST(Distribution, CanonicalOrder) {
    const auto d = from_counts({{"11", 2}, {"1", 1}, {"0", 4}, {"10", 2}, {"00", 9}});
    std::vector<std::string> order;
    for (const auto& e : d.entries()) order.push_back(e.string);
    EXPECT_EQ(order, (std::vector<std::string>{"0", "1", "00", "10", "11"}));
}
