#pragma once

// n-state, 2-symbol Turing machines: representation, the mixed-radix
// enumeration of the (n,2) space, bounded simulation and exhaustive Busy
// Beaver search.
//
// Semantics: the machine starts in state 1 with the head on cell 0. Each step
// reads the scanned cell, writes, moves one cell and changes state. Entering
// state 0 halts the machine; the halting transition still writes and moves.
// The output is the contiguous block of cells that were read at the start of
// some step, so the destination of the final move is not part of it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace algoprob {

enum class Move : std::uint8_t { Left = 0, Right = 1 };

struct TransitionEntry {
    std::uint8_t write_symbol = 0;
    Move move = Move::Left;
    std::uint32_t next_state = 0;

    friend bool operator==(const TransitionEntry&, const TransitionEntry&) = default;
};

// Largest n whose machine space size (4(n+1))^(2n) fits in 64 bits.
inline constexpr std::uint32_t kMaxEncodableStates = 6;

// Default resource budget for exhaustive work. n = 4 is ~2.56e10 machines.
inline constexpr std::uint32_t kDefaultStateBudget = 4;

inline std::uint64_t space_size(std::uint32_t n) {
    if (n < 1 || n > kMaxEncodableStates)
        throw RangeError("machine space (" + std::to_string(n) + ",2) is not encodable; n must be in [1, " +
                         std::to_string(kMaxEncodableStates) + "]");
    const std::uint64_t base = 4ULL * (n + 1);
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < 2 * n; ++i) size *= base;
    return size;
}

inline void check_state_budget(std::uint32_t n, std::uint32_t budget = kDefaultStateBudget) {
    if (n < 1) throw ParameterError("number of states must be >= 1");
    if (n > budget)
        throw CapacityError("(" + std::to_string(n) + ",2) exceeds the configured budget of " +
                            std::to_string(budget) + " states");
}

// Complete transition table. Entry (state, symbol) lives at 2*(state-1)+symbol.
class TuringMachineSpec {
public:
    explicit TuringMachineSpec(std::uint32_t n_states) : n_(n_states) {
        if (n_states < 1 || n_states > kMaxEncodableStates)
            throw ParameterError("n_states must be in [1, " + std::to_string(kMaxEncodableStates) + "]");
    }

    TuringMachineSpec(std::uint32_t n_states, std::span<const TransitionEntry> entries)
        : TuringMachineSpec(n_states) {
        if (entries.size() != 2 * n_states)
            throw ParameterError("expected " + std::to_string(2 * n_states) + " transition entries, got " +
                                 std::to_string(entries.size()));
        std::copy(entries.begin(), entries.end(), table_.begin());
        validate();
    }

    std::uint32_t n_states() const noexcept { return n_; }
    std::span<const TransitionEntry> entries() const noexcept { return {table_.data(), 2 * std::size_t{n_}}; }

    const TransitionEntry& entry(std::uint32_t state, unsigned symbol) const noexcept {
        return table_[2 * (state - 1) + symbol];
    }
    TransitionEntry& entry(std::uint32_t state, unsigned symbol) noexcept { return table_[2 * (state - 1) + symbol]; }

    bool has_halt_transition() const noexcept {
        return std::any_of(entries().begin(), entries().end(), [](const auto& e) { return e.next_state == 0; });
    }

    void validate() const {
        for (const auto& e : entries()) {
            if (e.write_symbol > 1) throw ParameterError("write symbol must be 0 or 1");
            if (e.move != Move::Left && e.move != Move::Right) throw ParameterError("move must be Left or Right");
            if (e.next_state > n_)
                throw ParameterError("next state " + std::to_string(e.next_state) + " outside [0, " +
                                     std::to_string(n_) + "]");
        }
    }

    friend bool operator==(const TuringMachineSpec& a, const TuringMachineSpec& b) {
        return a.n_ == b.n_ && std::equal(a.entries().begin(), a.entries().end(), b.entries().begin());
    }

private:
    std::uint32_t n_;
    std::array<TransitionEntry, 2 * kMaxEncodableStates> table_{};
};

// Index digits are base 4(n+1), least significant first, one per entry:
// write = d mod 2, move = Right iff (d div 2) mod 2, next_state = d div 4.
inline TuringMachineSpec decode_machine(std::uint64_t index, std::uint32_t n) {
    const std::uint64_t size = space_size(n);
    if (index >= size)
        throw RangeError("machine index " + std::to_string(index) + " out of range for (" + std::to_string(n) +
                         ",2), whose space has " + std::to_string(size) + " machines");
    TuringMachineSpec spec(n);
    const std::uint64_t base = 4ULL * (n + 1);
    for (std::uint32_t i = 0; i < 2 * n; ++i) {
        const auto d = static_cast<std::uint32_t>(index % base);
        index /= base;
        auto& e = spec.entry(i / 2 + 1, i % 2);
        e.write_symbol = static_cast<std::uint8_t>(d % 2);
        e.move = ((d / 2) % 2) == 0 ? Move::Left : Move::Right;
        e.next_state = d / 4;
    }
    return spec;
}

inline std::uint64_t encode_machine(const TuringMachineSpec& spec) {
    spec.validate();
    const std::uint64_t base = 4ULL * (spec.n_states() + 1);
    std::uint64_t index = 0;
    const auto entries = spec.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        const std::uint64_t d = it->write_symbol + 2U * static_cast<unsigned>(it->move) + 4ULL * it->next_state;
        index = index * base + d;
    }
    return index;
}

// Left and Right swapped in every entry.
inline TuringMachineSpec mirror(const TuringMachineSpec& spec) {
    TuringMachineSpec out = spec;
    for (std::uint32_t s = 1; s <= spec.n_states(); ++s)
        for (unsigned sym = 0; sym < 2; ++sym) {
            auto& e = out.entry(s, sym);
            e.move = e.move == Move::Left ? Move::Right : Move::Left;
        }
    return out;
}

// Index of mirror(decode_machine(index, n)) without decoding; flips bit 1 of every digit.
inline std::uint64_t mirror_index(std::uint64_t index, std::uint32_t n) {
    const std::uint64_t base = 4ULL * (n + 1);
    std::uint64_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < 2 * n; ++i) {
        const std::uint64_t d = index % base;
        index /= base;
        out += (d ^ 2U) * place;
        place *= base;
    }
    return out;
}

enum class RunStatus { Halted, CapExceeded };

struct RunOutcome {
    RunStatus status = RunStatus::CapExceeded;
    std::uint64_t steps = 0;
    std::uint64_t ones_count = 0;
    BitString output;

    friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

// Execution state with a sparse tape. This is the literal reading of the
// machine semantics; Simulator below is the fast path used for enumeration.
struct MachineConfig {
    std::map<std::int64_t, std::uint8_t> tape;
    std::int64_t head = 0;
    std::uint32_t state = 1;
    std::uint64_t steps = 0;
    std::int64_t scanned_min = 0;
    std::int64_t scanned_max = 0;

    static MachineConfig with_tape(std::string_view initial_tape) {
        require_bitstring(initial_tape, "initial tape");
        MachineConfig c;
        for (std::size_t i = 0; i < initial_tape.size(); ++i)
            if (initial_tape[i] == '1') c.tape[static_cast<std::int64_t>(i)] = 1;
        return c;
    }

    std::uint8_t read(std::int64_t cell) const {
        const auto it = tape.find(cell);
        return it == tape.end() ? 0 : it->second;
    }
};

// One step; no-op once halted.
inline void step(const TuringMachineSpec& spec, MachineConfig& c) {
    if (c.state == 0) return;
    if (c.steps == 0) {
        c.scanned_min = c.scanned_max = c.head;
    } else {
        c.scanned_min = std::min(c.scanned_min, c.head);
        c.scanned_max = std::max(c.scanned_max, c.head);
    }
    const auto& e = spec.entry(c.state, c.read(c.head));
    if (e.write_symbol) c.tape[c.head] = 1;
    else c.tape.erase(c.head);
    c.head += e.move == Move::Right ? 1 : -1;
    c.state = e.next_state;
    ++c.steps;
}

inline RunOutcome outcome_of(const MachineConfig& c) {
    RunOutcome out;
    out.status = c.state == 0 ? RunStatus::Halted : RunStatus::CapExceeded;
    out.steps = c.steps;
    out.ones_count = c.tape.size();
    for (std::int64_t i = c.scanned_min; i <= c.scanned_max; ++i) out.output.push_back(c.read(i) ? '1' : '0');
    return out;
}

// Reference simulation over the sparse configuration.
inline RunOutcome run_reference(const TuringMachineSpec& spec, std::string_view initial_tape, std::uint64_t cap) {
    if (cap < 1) throw ParameterError("cap must be >= 1");
    auto c = MachineConfig::with_tape(initial_tape);
    while (c.state != 0 && c.steps < cap) step(spec, c);
    return outcome_of(c);
}

// Reusable dense-tape simulator. A run can move the head at most `cap`
// cells away from the origin, so one buffer of 2*cap + |tape| + 2 cells
// suffices; only the touched span is cleared between runs.
class Simulator {
public:
    struct Result {
        RunStatus status;
        std::uint64_t steps;
    };

    Result execute(const TuringMachineSpec& spec, std::string_view initial_tape, std::uint64_t cap) {
        if (cap < 1) throw ParameterError("cap must be >= 1");
        clear();
        const auto len = static_cast<std::int64_t>(initial_tape.size());
        const auto needed = static_cast<std::size_t>(2 * cap + initial_tape.size() + 2);
        if (tape_.size() < needed || origin_ != static_cast<std::int64_t>(cap) + 1) {
            tape_.assign(needed, 0);
            origin_ = static_cast<std::int64_t>(cap) + 1;
        }
        for (std::int64_t i = 0; i < len; ++i) {
            const char ch = initial_tape[static_cast<std::size_t>(i)];
            if (ch != '0' && ch != '1') throw ParameterError("initial tape: not a binary string");
            tape_[static_cast<std::size_t>(origin_ + i)] = static_cast<std::uint8_t>(ch - '0');
        }

        const TransitionEntry* table = spec.entries().data();
        std::uint8_t* tape = tape_.data();
        std::int64_t head = origin_, lo = origin_, hi = origin_;
        std::uint32_t state = 1;
        std::uint64_t steps = 0;
        while (steps < cap) {
            lo = head < lo ? head : lo;
            hi = head > hi ? head : hi;
            const TransitionEntry& e = table[2 * (state - 1) + tape[head]];
            tape[head] = e.write_symbol;
            head += e.move == Move::Right ? 1 : -1;
            state = e.next_state;
            ++steps;
            if (state == 0) break;
        }
        lo_ = lo;
        hi_ = hi;
        dirty_lo_ = std::min(lo, origin_);
        dirty_hi_ = std::max(hi, origin_ + len - 1);
        return {state == 0 ? RunStatus::Halted : RunStatus::CapExceeded, steps};
    }

    // Valid until the next execute().
    BitString output() const {
        BitString out(static_cast<std::size_t>(hi_ - lo_ + 1), '0');
        for (std::int64_t i = lo_; i <= hi_; ++i)
            out[static_cast<std::size_t>(i - lo_)] = static_cast<char>('0' + tape_[static_cast<std::size_t>(i)]);
        return out;
    }

    std::uint64_t ones_count() const {
        std::uint64_t ones = 0;
        for (std::int64_t i = dirty_lo_; i <= dirty_hi_; ++i) ones += tape_[static_cast<std::size_t>(i)];
        return ones;
    }

private:
    void clear() {
        if (dirty_hi_ >= dirty_lo_)
            std::fill(tape_.begin() + dirty_lo_, tape_.begin() + dirty_hi_ + 1, std::uint8_t{0});
        dirty_lo_ = 0;
        dirty_hi_ = -1;
    }

    std::vector<std::uint8_t> tape_;
    std::int64_t origin_ = 0;
    std::int64_t lo_ = 0, hi_ = -1;
    std::int64_t dirty_lo_ = 0, dirty_hi_ = -1;
};

inline RunOutcome run(const TuringMachineSpec& spec, std::string_view initial_tape, std::uint64_t cap) {
    Simulator sim;
    const auto r = sim.execute(spec, initial_tape, cap);
    return {r.status, r.steps, sim.ones_count(), sim.output()};
}

struct BusyBeaverResult {
    std::uint32_t n = 0;
    std::uint64_t sigma = 0;
    std::uint64_t s_max = 0;
    std::uint64_t halting_count = 0;
    std::uint64_t total_count = 0;
    std::uint64_t cap_used = 0;

    friend bool operator==(const BusyBeaverResult&, const BusyBeaverResult&) = default;
};

struct EnumerationOptions {
    unsigned workers = 1;
    // Run only one machine of each mirror pair; the partner's outcome is the
    // same run with the output reversed. Blank tape only.
    bool mirror_reduction = false;
    std::uint32_t state_budget = kDefaultStateBudget;
    std::uint64_t chunk_size = 1ULL << 16;
};

// Visits every machine of (n,2) in [begin, end) that can halt at all, running
// it from the blank tape. `on_halt(sim, multiplicity, mirrored)` is called for
// each halter. Machines without a transition into state 0 are skipped.
template <typename OnHalt>
void for_each_blank_halter(std::uint32_t n, std::uint64_t cap, std::uint64_t begin, std::uint64_t end,
                           bool mirror_reduction, Simulator& sim, OnHalt&& on_halt) {
    for (std::uint64_t i = begin; i < end; ++i) {
        if (mirror_reduction && mirror_index(i, n) < i) continue;
        const auto spec = decode_machine(i, n);
        if (!spec.has_halt_transition()) continue;
        const auto r = sim.execute(spec, {}, cap);
        if (r.status == RunStatus::Halted) on_halt(sim, r, mirror_reduction);
    }
}

inline BusyBeaverResult busy_beaver_search(std::uint32_t n, std::uint64_t cap, const EnumerationOptions& opts = {}) {
    check_state_budget(n, opts.state_budget);
    if (cap < 1) throw ParameterError("cap must be >= 1");
    const std::uint64_t total = space_size(n);

    struct Acc {
        std::uint64_t sigma = 0, s_max = 0, halting = 0;
    };
    const Acc acc = parallel_reduce<Acc>(
        total, opts.chunk_size, opts.workers, [] { return Acc{}; },
        [&](Acc& a, std::uint64_t begin, std::uint64_t end) {
            Simulator sim;
            for_each_blank_halter(n, cap, begin, end, opts.mirror_reduction, sim,
                                  [&](const Simulator& s, const Simulator::Result& r, bool paired) {
                                      a.sigma = std::max(a.sigma, s.ones_count());
                                      a.s_max = std::max(a.s_max, r.steps);
                                      a.halting += paired ? 2 : 1;
                                  });
        },
        [](Acc& into, Acc&& part) {
            into.sigma = std::max(into.sigma, part.sigma);
            into.s_max = std::max(into.s_max, part.s_max);
            into.halting += part.halting;
        });
    return {n, acc.sigma, acc.s_max, acc.halting, total, cap};
}

} // namespace algoprob
