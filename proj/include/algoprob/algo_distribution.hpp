#pragma once

// Experimental output distribution of a complete (n,2) machine space: every
// machine is run with a step cap and the outputs of the halting ones are
// counted. Frequencies are therefore conditional on halting.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "pattern_distribution.hpp"
#include "rng.hpp"
#include "tm_core.hpp"

namespace algoprob {

struct BlankInit {};

// N seeded random tapes of `length` bits at cells 0..length-1.
struct RandomSegmentInit {
    std::size_t length = 0;
    std::size_t samples = 0;
};

struct InitMode {
    bool random = false;
    RandomSegmentInit segment{};

    static InitMode blank() { return {}; }
    static InitMode random_segment(std::size_t length, std::size_t samples) { return {true, {length, samples}}; }
};

// The tapes used in RandomSegment mode; tape i comes from substream i of seed.
inline std::vector<BitString> random_segment_tapes(const RandomSegmentInit& init, std::uint64_t seed) {
    std::vector<BitString> tapes;
    tapes.reserve(init.samples);
    for (std::size_t i = 0; i < init.samples; ++i) {
        auto eng = make_substream(seed, i);
        tapes.push_back(random_bits(eng, init.length));
    }
    return tapes;
}

inline Provenance machine_space_source(std::uint32_t n, std::uint64_t cap, const InitMode& init) {
    Provenance p{{"kind", "tm"}, {"states", std::to_string(n)}, {"cap", std::to_string(cap)}};
    if (init.random) {
        p["init"] = "random";
        p["seg_len"] = std::to_string(init.segment.length);
        p["samples"] = std::to_string(init.segment.samples);
    } else {
        p["init"] = "blank";
    }
    return p;
}

// Distribution over machines [begin, end) only; the provenance carries the
// shard range. build_distribution() is the merge of all shards.
inline PatternDistribution build_distribution_shard(std::uint32_t n, std::uint64_t cap, const InitMode& init,
                                                    std::optional<std::uint64_t> seed, std::uint64_t begin,
                                                    std::uint64_t end, bool mirror_reduction = false) {
    PatternDistribution d;
    d.source = machine_space_source(n, cap, init);
    d.source[std::string(kShardKey)] = std::to_string(begin) + ".." + std::to_string(end);
    Simulator sim;
    if (!init.random) {
        d.total_runs = end - begin;
        for_each_blank_halter(n, cap, begin, end, mirror_reduction, sim,
                              [&](const Simulator& s, const Simulator::Result&, bool paired) {
                                  auto out = s.output();
                                  if (paired) {
                                      d.add(reversed(out));
                                      ++d.contributing_runs;
                                  }
                                  d.add(out);
                                  ++d.contributing_runs;
                              });
        return d;
    }

    if (!seed) throw ParameterError("RandomSegment mode requires a seed");
    d.seed = seed;
    const auto tapes = random_segment_tapes(init.segment, *seed);
    d.total_runs = (end - begin) * tapes.size();
    for (std::uint64_t i = begin; i < end; ++i) {
        const auto spec = decode_machine(i, n);
        if (!spec.has_halt_transition()) continue;
        for (const auto& tape : tapes) {
            if (sim.execute(spec, tape, cap).status == RunStatus::Halted) {
                d.add(sim.output());
                ++d.contributing_runs;
            }
        }
    }
    return d;
}

inline PatternDistribution build_distribution(std::uint32_t n, std::uint64_t cap, const InitMode& init,
                                              std::optional<std::uint64_t> seed,
                                              const EnumerationOptions& opts = {}) {
    check_state_budget(n, opts.state_budget);
    if (cap < 1) throw ParameterError("cap must be >= 1");
    if (init.random) {
        if (init.segment.length < 1 || init.segment.samples < 1)
            throw ParameterError("RandomSegment needs length >= 1 and samples >= 1");
        if (!seed) throw ParameterError("RandomSegment mode requires a seed");
    }
    const bool mirror_reduction = opts.mirror_reduction && !init.random;
    const std::uint64_t total = space_size(n);

    PatternDistribution empty;
    empty.source = machine_space_source(n, cap, init);
    if (init.random) empty.seed = seed;

    return parallel_reduce<PatternDistribution>(
        total, opts.chunk_size, opts.workers, [&] { return empty; },
        [&](PatternDistribution& acc, std::uint64_t begin, std::uint64_t end) {
            acc = build_distribution_shard(n, cap, init, seed, begin, end, mirror_reduction);
        },
        [](PatternDistribution& into, PatternDistribution&& part) { into = merge(into, part); });
}

} // namespace algoprob
