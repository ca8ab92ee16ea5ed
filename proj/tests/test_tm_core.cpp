#include <gtest/gtest.h>

#include <random>

#include "algoprob/tm_core.hpp"
#include "oracle.hpp"

using namespace algoprob;

namespace {

TuringMachineSpec one_state(TransitionEntry on0, TransitionEntry on1 = {}) {
    const TransitionEntry entries[] = {on0, on1};
    return TuringMachineSpec(1, entries);
}

std::vector<oracle::Rule> to_rules(const TuringMachineSpec& spec) {
    std::vector<oracle::Rule> rules;
    for (const auto& e : spec.entries())
        rules.push_back({e.write_symbol, e.move == Move::Right ? 1 : -1, static_cast<int>(e.next_state)});
    return rules;
}

} // namespace

TEST(Decode, ZeroIndexIsAllZeroDigits) {
    const auto spec = decode_machine(0, 1);
    for (const auto& e : spec.entries()) EXPECT_EQ(e, (TransitionEntry{0, Move::Left, 0}));
}

TEST(Decode, LastIndexOfOneStateSpace) {
    const auto spec = decode_machine(63, 1);
    for (const auto& e : spec.entries()) EXPECT_EQ(e, (TransitionEntry{1, Move::Right, 1}));
}

TEST(Decode, SpaceSizes) {
    EXPECT_EQ(space_size(1), 64U);
    EXPECT_EQ(space_size(2), 20736U);
    EXPECT_EQ(space_size(3), 16777216U);
    EXPECT_EQ(space_size(4), 25600000000ULL);
}

TEST(Decode, OutOfRangeNamesSpaceSize) {
    try {
        decode_machine(64, 1);
        FAIL() << "expected RangeError";
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("64"), std::string::npos);
    }
    EXPECT_THROW(space_size(0), RangeError);
    EXPECT_THROW(space_size(7), RangeError);
}

TEST(Encode, HandComputedIndex) {
    const auto spec = one_state({1, Move::Right, 0}, {0, Move::Left, 0});
    EXPECT_EQ(encode_machine(spec), 3U);
    EXPECT_EQ(encode_machine(TuringMachineSpec(2)), 0U);
}

TEST(Encode, RoundtripExhaustiveUpToTwoStates) {
    for (std::uint32_t n : {1U, 2U})
        for (std::uint64_t i = 0; i < space_size(n); ++i) ASSERT_EQ(encode_machine(decode_machine(i, n)), i);
}

TEST(Encode, RoundtripSampledThreeAndFourStates) {
    std::mt19937_64 eng(7);
    for (std::uint32_t n : {3U, 4U, 6U})
        for (int t = 0; t < 2000; ++t) {
            const std::uint64_t i = eng() % space_size(n);
            ASSERT_EQ(encode_machine(decode_machine(i, n)), i);
        }
}

TEST(Spec, RejectsInvalidEntries) {
    const TransitionEntry bad_state[] = {{0, Move::Left, 2}, {0, Move::Left, 0}};
    EXPECT_THROW(TuringMachineSpec(1, bad_state), ParameterError);
    const TransitionEntry bad_write[] = {{2, Move::Left, 0}, {0, Move::Left, 0}};
    EXPECT_THROW(TuringMachineSpec(1, bad_write), ParameterError);
    const TransitionEntry too_few[] = {{0, Move::Left, 0}};
    EXPECT_THROW(TuringMachineSpec(1, too_few), ParameterError);
}

TEST(Run, HaltsAfterOneStepWritingOne) {
    const auto r = run(one_state({1, Move::Right, 0}), "", 10);
    EXPECT_EQ(r.status, RunStatus::Halted);
    EXPECT_EQ(r.steps, 1U);
    EXPECT_EQ(r.ones_count, 1U);
    EXPECT_EQ(r.output, "1");
}

TEST(Run, RunsRightForeverUntilCap) {
    const auto r = run(one_state({1, Move::Right, 1}), "", 100);
    EXPECT_EQ(r.status, RunStatus::CapExceeded);
    EXPECT_EQ(r.steps, 100U);
    EXPECT_EQ(r.ones_count, 100U);
    EXPECT_EQ(r.output.size(), 100U);
}

TEST(Run, HaltsWritingZero) {
    const auto r = run(one_state({0, Move::Left, 0}), "", 10);
    EXPECT_EQ(r.status, RunStatus::Halted);
    EXPECT_EQ(r.steps, 1U);
    EXPECT_EQ(r.output, "0");
}

TEST(Run, CapOfZeroIsRejected) { EXPECT_THROW(run(TuringMachineSpec(1), "", 0), ParameterError); }

TEST(Run, InitialTapeIsReadAndCounted) {
    // State 1 moves right over 1s and halts on the first 0.
    const auto spec = one_state({0, Move::Right, 0}, {1, Move::Right, 1});
    const auto r = run(spec, "1101", 50);
    EXPECT_EQ(r.status, RunStatus::Halted);
    EXPECT_EQ(r.steps, 3U);
    EXPECT_EQ(r.output, "110");
    EXPECT_EQ(r.ones_count, 3U);  // the unread trailing 1 still counts
}

TEST(Run, HaltingExactlyAtCapIsHalted) {
    const auto spec = one_state({1, Move::Right, 0});
    EXPECT_EQ(run(spec, "", 1).status, RunStatus::Halted);
}

TEST(Run, FastPathMatchesSparseReferenceExhaustively) {
    Simulator sim;
    for (std::uint32_t n : {1U, 2U})
        for (std::uint64_t i = 0; i < space_size(n); ++i) {
            const auto spec = decode_machine(i, n);
            const auto r = sim.execute(spec, {}, 40);
            const RunOutcome fast{r.status, r.steps, sim.ones_count(), sim.output()};
            ASSERT_EQ(fast, run_reference(spec, "", 40)) << "machine " << i;
        }
}

TEST(Run, FastPathMatchesReferenceOnRandomTapes) {
    std::mt19937_64 eng(11);
    Simulator sim;
    for (int t = 0; t < 3000; ++t) {
        const auto spec = decode_machine(eng() % space_size(3), 3);
        std::string tape;
        for (std::uint64_t len = eng() % 9; len > 0; --len) tape += static_cast<char>('0' + eng() % 2);
        const auto r = sim.execute(spec, tape, 60);
        const RunOutcome fast{r.status, r.steps, sim.ones_count(), sim.output()};
        ASSERT_EQ(fast, run_reference(spec, tape, 60));
    }
}

TEST(Run, AgreesWithIndependentOracle) {
    std::mt19937_64 eng(3);
    for (int t = 0; t < 2000; ++t) {
        const auto spec = decode_machine(eng() % space_size(3), 3);
        const auto mine = run(spec, "", 100);
        const auto ref = oracle::simulate(to_rules(spec), 100);
        ASSERT_EQ(mine.status == RunStatus::Halted, ref.halted);
        ASSERT_EQ(static_cast<long>(mine.steps), ref.steps);
        ASSERT_EQ(static_cast<long>(mine.ones_count), ref.ones);
        ASSERT_EQ(mine.output, ref.output);
    }
}

TEST(Run, Deterministic) {
    const auto spec = decode_machine(123456, 3);
    EXPECT_EQ(run(spec, "0110", 500), run(spec, "0110", 500));
}

TEST(Run, OutputNeverEmpty) {
    for (std::uint64_t i = 0; i < space_size(2); i += 7) EXPECT_GE(run(decode_machine(i, 2), "", 30).output.size(), 1U);
}

TEST(Mirror, IndexAgreesWithSpecMirror) {
    for (std::uint64_t i = 0; i < space_size(2); ++i) {
        ASSERT_EQ(mirror_index(i, 2), encode_machine(mirror(decode_machine(i, 2))));
        ASSERT_NE(mirror_index(i, 2), i);
    }
}

TEST(Mirror, MirroredRunIsReversedRunExhaustive) {
    for (std::uint32_t n : {1U, 2U})
        for (std::uint64_t i = 0; i < space_size(n); ++i) {
            const auto spec = decode_machine(i, n);
            const auto a = run(spec, "", 200);
            const auto b = run(mirror(spec), "", 200);
            ASSERT_EQ(a.status, b.status);
            ASSERT_EQ(a.steps, b.steps);
            ASSERT_EQ(a.ones_count, b.ones_count);
            ASSERT_EQ(reversed(a.output), b.output);
        }
}

TEST(BusyBeaver, OneState) {
    const auto r = busy_beaver_search(1, 1000);
    EXPECT_EQ(r.sigma, 1U);
    EXPECT_EQ(r.s_max, 1U);
    EXPECT_EQ(r.halting_count, 32U);
    EXPECT_EQ(r.total_count, 64U);
    EXPECT_EQ(r.cap_used, 1000U);
}

// Frozen from oracle::census(2, 1000).
TEST(BusyBeaver, TwoStatesMatchesFrozenOracle) {
    const auto r = busy_beaver_search(2, 1000);
    EXPECT_EQ(r.sigma, 4U);
    EXPECT_EQ(r.s_max, 6U);
    EXPECT_EQ(r.halting_count, 9784U);
    EXPECT_EQ(r.total_count, 20736U);
    EXPECT_LE(r.sigma, r.s_max + 1);
}

TEST(BusyBeaver, TwoStatesMatchesLiveOracle) {
    const auto c = oracle::census(2, 50);
    const auto r = busy_beaver_search(2, 50);
    EXPECT_EQ(static_cast<long>(r.sigma), c.sigma);
    EXPECT_EQ(static_cast<long>(r.s_max), c.s_max);
    EXPECT_EQ(static_cast<long>(r.halting_count), c.halting);
}

TEST(BusyBeaver, IndependentOfWorkersAndMirrorReduction) {
    const auto base = busy_beaver_search(2, 200);
    for (unsigned w : {2U, 8U})
        for (bool mirrored : {false, true}) {
            EnumerationOptions opts;
            opts.workers = w;
            opts.mirror_reduction = mirrored;
            opts.chunk_size = 1000;
            EXPECT_EQ(busy_beaver_search(2, 200, opts), base);
        }
}

TEST(BusyBeaver, MonotoneInCap) {
    BusyBeaverResult prev{};
    for (std::uint64_t cap : {1U, 2U, 3U, 4U, 5U, 6U, 7U, 20U}) {
        const auto r = busy_beaver_search(2, cap);
        EXPECT_GE(r.sigma, prev.sigma);
        EXPECT_GE(r.s_max, prev.s_max);
        EXPECT_GE(r.halting_count, prev.halting_count);
        prev = r;
    }
}

TEST(BusyBeaver, CapacityGuard) {
    EXPECT_THROW(busy_beaver_search(5, 100), CapacityError);
    EXPECT_THROW(busy_beaver_search(0, 100), ParameterError);
    EnumerationOptions tight;
    tight.state_budget = 2;
    EXPECT_THROW(busy_beaver_search(3, 100, tight), CapacityError);
}
