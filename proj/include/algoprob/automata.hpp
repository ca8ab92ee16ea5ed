#pragma once

// Non-halting machines: elementary (1D, 3-cell) cellular automata and the 2D
// totalistic automaton on the 9-cell Moore neighborhood. Both use periodic
// boundaries. Their space-time output is sampled at a cutoff and cut into
// k-tuples.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "pattern_distribution.hpp"
#include "rng.hpp"

namespace algoprob {

struct SpaceTime1D {
    std::uint32_t rule = 0;
    std::size_t width = 0;
    std::vector<BitString> rows;  // rows[0] is the initial condition
    Provenance source;
    std::optional<std::uint64_t> seed;
};

struct SingleOne {};
struct RandomBits {
    std::uint64_t seed = 0;
};
struct ExplicitRow {
    BitString row;
};
using EcaInit = std::variant<SingleOne, RandomBits, ExplicitRow>;

inline BitString eca_step(std::uint32_t rule, const BitString& row) {
    const std::size_t w = row.size();
    BitString next(w, '0');
    for (std::size_t i = 0; i < w; ++i) {
        const unsigned l = row[(i + w - 1) % w] - '0';
        const unsigned c = row[i] - '0';
        const unsigned r = row[(i + 1) % w] - '0';
        next[i] = static_cast<char>('0' + ((rule >> (4 * l + 2 * c + r)) & 1U));
    }
    return next;
}

inline SpaceTime1D eca_run(std::uint32_t rule, std::size_t width, std::size_t steps, const EcaInit& init) {
    if (rule > 255) throw ParameterError("elementary rule must be in [0, 255]");
    if (width < 3) throw ParameterError("width must be >= 3");
    if (steps < 1) throw ParameterError("steps must be >= 1");

    SpaceTime1D st{rule, width, {}, {{"kind", "eca"}, {"rule", std::to_string(rule)},
                                     {"width", std::to_string(width)}, {"steps", std::to_string(steps)}}, {}};
    BitString row;
    if (std::holds_alternative<SingleOne>(init)) {
        row.assign(width, '0');
        row[width / 2] = '1';
        st.source["init"] = "single";
    } else if (const auto* rb = std::get_if<RandomBits>(&init)) {
        row = random_bits(rb->seed, width);
        st.source["init"] = "random";
        st.seed = rb->seed;
    } else {
        row = std::get<ExplicitRow>(init).row;
        require_bitstring(row, "initial row");
        if (row.size() != width) throw ParameterError("initial row length does not match width");
        st.source["init"] = "explicit";
    }
    st.rows.reserve(steps + 1);
    st.rows.push_back(row);
    for (std::size_t t = 0; t < steps; ++t) st.rows.push_back(eca_step(rule, st.rows.back()));
    return st;
}

using BitMatrix = std::vector<BitString>;

struct Snapshot {
    std::size_t step = 0;
    BitMatrix cells;
};

struct Grid2D {
    std::uint32_t rule = 0;
    std::size_t height = 0, width = 0;
    std::vector<Snapshot> snapshots;
    Provenance source;
    std::optional<std::uint64_t> seed;
};

inline constexpr std::uint32_t kMaxTotalisticCode = (1U << 10) - 1;

// New state is bit `sum` of the rule code, sum = ones in the 3x3 block around the cell.
inline BitMatrix totalistic_step(std::uint32_t rule, const BitMatrix& m) {
    const std::size_t h = m.size(), w = m.front().size();
    BitMatrix next(h, BitString(w, '0'));
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            unsigned sum = 0;
            for (std::size_t dy = 0; dy < 3; ++dy)
                for (std::size_t dx = 0; dx < 3; ++dx) sum += m[(y + h + dy - 1) % h][(x + w + dx - 1) % w] - '0';
            next[y][x] = static_cast<char>('0' + ((rule >> sum) & 1U));
        }
    return next;
}

inline BitMatrix random_matrix(std::uint64_t seed, std::size_t h, std::size_t w) {
    auto eng = make_engine(seed);
    BitMatrix m;
    m.reserve(h);
    for (std::size_t y = 0; y < h; ++y) m.push_back(random_bits(eng, w));
    return m;
}

// Runs from an explicit initial matrix.
inline Grid2D ca2d_run(std::uint32_t rule, const BitMatrix& initial, std::size_t steps, std::size_t snapshot_every) {
    if (rule > kMaxTotalisticCode) throw ParameterError("totalistic rule code must be < 1024 (sums range over 0..9)");
    if (initial.size() < 3 || initial.front().size() < 3) throw ParameterError("grid must be at least 3x3");
    if (steps < 1 || snapshot_every < 1) throw ParameterError("steps and snapshot_every must be >= 1");
    for (const auto& row : initial) {
        if (row.size() != initial.front().size()) throw ParameterError("ragged initial matrix");
        require_bitstring(row, "initial matrix");
    }
    Grid2D g{rule, initial.size(), initial.front().size(), {}, {}, {}};
    g.source = {{"kind", "ca2d"},
                {"rule", std::to_string(rule)},
                {"height", std::to_string(g.height)},
                {"width", std::to_string(g.width)},
                {"steps", std::to_string(steps)},
                {"snapshot_every", std::to_string(snapshot_every)},
                {"init", "explicit"}};
    BitMatrix m = initial;
    g.snapshots.push_back({0, m});
    for (std::size_t t = 1; t <= steps; ++t) {
        m = totalistic_step(rule, m);
        if (t % snapshot_every == 0) g.snapshots.push_back({t, m});
    }
    return g;
}

inline Grid2D ca2d_run(std::uint32_t rule, std::size_t height, std::size_t width, std::size_t steps,
                       std::uint64_t seed, std::size_t snapshot_every) {
    if (height < 3 || width < 3) throw ParameterError("grid must be at least 3x3");
    auto g = ca2d_run(rule, random_matrix(seed, height, width), steps, snapshot_every);
    g.source["init"] = "random";
    g.seed = seed;
    return g;
}

enum class RowSelection { Final, All };

namespace detail {
inline PatternDistribution cutoff_from_rows(const std::vector<const BitString*>& rows, Provenance source,
                                            std::optional<std::uint64_t> seed, std::size_t k, Windowing mode, RowSelection which) {
    PatternDistribution d;
    d.source = std::move(source);
    d.seed = seed;
    d.source["k"] = std::to_string(k);
    d.source["windowing"] = to_string(mode);
    d.source["rows"] = which == RowSelection::Final ? "final" : "all";
    for (const auto* row : rows) {
        d.total_runs += 1;
        if (count_windows(d, *row, k, mode) > 0) d.contributing_runs += 1;
    }
    return d;
}
} // namespace detail

inline PatternDistribution cutoff_distribution(const SpaceTime1D& st, std::size_t k, Windowing mode,
                                               RowSelection which = RowSelection::Final) {
    if (k > st.width) throw ParameterError("k exceeds row width");
    std::vector<const BitString*> rows;
    if (which == RowSelection::Final) rows.push_back(&st.rows.back());
    else
        for (const auto& r : st.rows) rows.push_back(&r);
    return detail::cutoff_from_rows(rows, st.source, st.seed, k, mode, which);
}

inline PatternDistribution cutoff_distribution(const Grid2D& g, std::size_t k, Windowing mode,
                                               RowSelection which = RowSelection::Final) {
    if (k > g.width) throw ParameterError("k exceeds row width");
    std::vector<const BitString*> rows;
    auto take = [&](const Snapshot& s) {
        for (const auto& r : s.cells) rows.push_back(&r);
    };
    if (which == RowSelection::Final) take(g.snapshots.back());
    else
        for (const auto& s : g.snapshots) take(s);
    return detail::cutoff_from_rows(rows, g.source, g.seed, k, mode, which);
}

// Binary PBM (P4): rows padded to whole bytes, 1 = black.
inline void write_pbm(std::ostream& out, const BitMatrix& m) {
    const std::size_t h = m.size(), w = h ? m.front().size() : 0;
    out << "P4\n" << w << ' ' << h << '\n';
    for (const auto& row : m) {
        std::string bytes((w + 7) / 8, '\0');
        for (std::size_t x = 0; x < w; ++x)
            if (row[x] == '1') bytes[x / 8] = static_cast<char>(bytes[x / 8] | (0x80 >> (x % 8)));
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
}

} // namespace algoprob
