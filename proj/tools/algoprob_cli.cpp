// Command-line driver: enumerate machine spaces, run automata, ingest files,
// compare distributions and write everything as self-describing files.
//
// Exit status: 0 success, 1 compute error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "algoprob/algoprob.hpp"

using namespace algoprob;
namespace fs = std::filesystem;

namespace {

struct OutputOptions {
    std::string out;
    std::string format = "json";
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "Distribution format")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) std::cout << text;
    else write_text(out, text);
}

void emit_distribution(const PatternDistribution& d, const OutputOptions& o) {
    emit(o.format == "csv" ? to_csv(d) : serialize(d), o.out);
}

Windowing windowing(bool overlap) { return overlap ? Windowing::Overlapping : Windowing::Disjoint; }

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Experimental algorithmic probability: machine-space distributions, automata, rank statistics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    unsigned workers = 1;

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Output distribution of every (n,2) machine");
    std::uint32_t states = 1;
    std::uint64_t cap = 1000;
    std::string init = "blank";
    std::size_t seg_len = 8, samples = 1;
    std::optional<std::uint64_t> seed;
    bool mirror_flag = false;
    OutputOptions enum_out;
    enumerate->add_option("--states", states, "Number of states n")->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--cap", cap, "Step cap per run")->check(CLI::PositiveNumber);
    enumerate->add_option("--init", init, "Initial tape")->check(CLI::IsMember({"blank", "random"}));
    enumerate->add_option("--seg-len", seg_len, "Random segment length");
    enumerate->add_option("--samples", samples, "Random segments per machine");
    enumerate->add_option("--seed", seed, "Seed for random segments");
    enumerate->add_option("--workers", workers, "Worker threads");
    enumerate->add_flag("--mirror", mirror_flag, "Run one machine per mirror pair (blank tape only)");
    add_output_flags(enumerate, enum_out);

    // busybeaver
    auto* bb = app.add_subcommand("busybeaver", "Exhaustive Busy Beaver search");
    bb->add_option("--states", states, "Number of states n")->required()->check(CLI::PositiveNumber);
    bb->add_option("--cap", cap, "Step cap per run")->check(CLI::PositiveNumber);
    bb->add_option("--workers", workers, "Worker threads");
    bb->add_flag("--mirror", mirror_flag, "Run one machine per mirror pair");

    // ca
    auto* ca = app.add_subcommand("ca", "Run a 1D elementary or 2D totalistic automaton and cut its output");
    int dims = 1;
    std::uint32_t rule = 30;
    std::size_t width = 100, height = 100, steps = 100, snapshot_every = 1, k = 4;
    std::string ca_init = "random", rows = "final", pbm_dir;
    bool overlap = true;
    OutputOptions ca_out;
    ca->add_option("--dims", dims, "1 or 2")->check(CLI::IsMember({1, 2}));
    ca->add_option("--rule", rule, "Rule number (0..255 for 1D, totalistic code < 1024 for 2D)");
    ca->add_option("--width", width, "Row width");
    ca->add_option("--height", height, "Grid height (2D)");
    ca->add_option("--steps", steps, "Steps to run");
    ca->add_option("--snapshot-every", snapshot_every, "Snapshot period (2D)");
    ca->add_option("--seed", seed, "Seed for random initial conditions");
    ca->add_option("--init", ca_init, "1D initial row")->check(CLI::IsMember({"single", "random"}));
    ca->add_option("--k", k, "Tuple length");
    ca->add_flag("--overlap,!--no-overlap", overlap, "Sliding windows (default) or disjoint blocks");
    ca->add_option("--rows", rows, "Rows to sample")->check(CLI::IsMember({"final", "all"}));
    ca->add_option("--pbm-dir", pbm_dir, "Write each 2D snapshot as a binary PBM into this directory");
    add_output_flags(ca, ca_out);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "k-tuple distribution of a local file");
    std::string file, binarize_method = "rawbits";
    OutputOptions ingest_out;
    ingest->add_option("--file", file, "Input file")->required();
    ingest->add_option("--binarize", binarize_method, "Binarization")->check(CLI::IsMember({"rawbits", "median"}));
    ingest->add_option("--k", k, "Tuple length");
    ingest->add_flag("--overlap,!--no-overlap", overlap, "Sliding windows (default) or disjoint blocks");
    add_output_flags(ingest, ingest_out);

    // compare
    auto* compare = app.add_subcommand("compare", "Spearman rank correlation with permutation p-value");
    std::string file_a, file_b, policy = "intersection", report_out;
    std::uint64_t permutations = 999;
    std::vector<std::string> probes;
    compare->add_option("--a", file_a, "First distribution file")->required();
    compare->add_option("--b", file_b, "Second distribution file")->required();
    compare->add_option("--k", k, "String length to compare");
    compare->add_option("--policy", policy, "Support alignment")->check(CLI::IsMember({"intersection", "union"}));
    compare->add_option("--permutations", permutations, "Seeded shuffles")->check(CLI::PositiveNumber);
    compare->add_option("--seed", seed, "Permutation seed (default 0)");
    compare->add_option("--workers", workers, "Worker threads");
    compare->add_option("--probe", probes, "Report the length-restricted rank of this string in both inputs");
    compare->add_option("--out", report_out, "Report file (stdout when omitted)");

    // symmetry
    auto* symmetry = app.add_subcommand("symmetry", "String symmetry group tools");
    std::optional<std::uint32_t> count;
    std::string string_arg;
    OutputOptions sym_out;
    symmetry->add_option("--count", count, "Print the number of orbits of length-n strings");
    symmetry->add_option("--string", string_arg, "Print the orbit of a string");
    symmetry->add_option("--file", file, "Collapse a distribution file by symmetry");
    add_output_flags(symmetry, sym_out);

    // complexity
    auto* complexity = app.add_subcommand("complexity", "-log2 frequency and rank of strings in a distribution");
    std::vector<std::string> strings;
    complexity->add_option("--file", file, "Distribution file")->required();
    complexity->add_option("--string", strings, "String(s) to look up")->required();

    // pi
    auto* pi = app.add_subcommand("pi", "Decimal digits of pi and their compressibility");
    std::size_t digits = 2400;
    bool ratios = false;
    std::string pi_out;
    pi->add_option("--count", digits, "Number of digits");
    pi->add_flag("--ratios", ratios, "Report compression ratios of pi digits and seeded random digits");
    pi->add_option("--seed", seed, "Seed for the random-digit baseline (default 0)");
    pi->add_option("--out", pi_out, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*enumerate) {
            if (states == kDefaultStateBudget)
                std::cerr << "warning: (" << states << ",2) enumeration is long-running\n";
            EnumerationOptions opts;
            opts.workers = workers;
            opts.mirror_reduction = mirror_flag;
            const InitMode mode = init == "random" ? InitMode::random_segment(seg_len, samples) : InitMode::blank();
            emit_distribution(build_distribution(states, cap, mode, mode.random ? seed : std::nullopt, opts), enum_out);
        } else if (*bb) {
            if (states == kDefaultStateBudget)
                std::cerr << "warning: (" << states << ",2) search is long-running\n";
            EnumerationOptions opts;
            opts.workers = workers;
            opts.mirror_reduction = mirror_flag;
            const auto r = busy_beaver_search(states, cap, opts);
            std::cout << "sigma=" << r.sigma << " s_max=" << r.s_max << " halting=" << r.halting_count << "/"
                      << r.total_count << " cap=" << r.cap_used << "\n";
        } else if (*ca) {
            const auto which = rows == "all" ? RowSelection::All : RowSelection::Final;
            if (dims == 1) {
                EcaInit eca_init = SingleOne{};
                if (ca_init == "random") {
                    if (!seed) throw ParameterError("--init random needs --seed");
                    eca_init = RandomBits{*seed};
                }
                const auto st = eca_run(rule, width, steps, eca_init);
                emit_distribution(cutoff_distribution(st, k, windowing(overlap), which), ca_out);
            } else {
                if (!seed) throw ParameterError("2D automata start from seeded random bits; pass --seed");
                const auto g = ca2d_run(rule, height, width, steps, *seed, snapshot_every);
                if (!pbm_dir.empty()) {
                    fs::create_directories(pbm_dir);
                    for (const auto& s : g.snapshots) {
                        std::ostringstream name;
                        name << "step_" << std::setw(6) << std::setfill('0') << s.step << ".pbm";
                        std::ofstream img(fs::path(pbm_dir) / name.str(), std::ios::binary);
                        write_pbm(img, s.cells);
                    }
                }
                emit_distribution(cutoff_distribution(g, k, windowing(overlap), which), ca_out);
            }
        } else if (*ingest) {
            const auto bytes = read_bytes(file);
            const auto method = binarize_method == "median" ? Binarization::ThresholdMedian : Binarization::RawBits;
            const auto stream = binarize(bytes, method, fs::path(file).filename().string());
            emit_distribution(tuple_counts(stream, k, windowing(overlap)), ingest_out);
        } else if (*compare) {
            const auto a = load_distribution(file_a);
            const auto b = load_distribution(file_b);
            const auto pol = policy == "union" ? SupportPolicy::UnionWithZeros : SupportPolicy::Intersection;
            auto j = to_json(compare_report(a, b, k, pol, permutations, seed.value_or(0), workers));
            if (!probes.empty()) {
                nlohmann::json out = nlohmann::json::array();
                for (const auto& s : probes) {
                    auto rank = [&](const PatternDistribution& d) {
                        return d.contains(s) ? nlohmann::json(rank_of(d, s, true)) : nlohmann::json(nullptr);
                    };
                    nlohmann::json p{{"string", s}, {"rank_a", rank(a)}, {"rank_b", rank(b)}};
                    // null when the string is missing from either side
                    p["b_ranked_worse"] = p["rank_a"].is_null() || p["rank_b"].is_null()
                                              ? nlohmann::json(nullptr)
                                              : nlohmann::json(p["rank_b"].get<std::uint64_t>() >
                                                               p["rank_a"].get<std::uint64_t>());
                    out.push_back(std::move(p));
                }
                j["probes"] = std::move(out);
            }
            emit(j.dump(2) + "\n", report_out);
        } else if (*symmetry) {
            if (count) {
                std::cout << burnside_count(*count) << "\n";
            } else if (!string_arg.empty()) {
                const auto o = orbit(string_arg);
                std::cout << "canonical=" << o.canonical << " members=";
                bool first = true;
                for (const auto& m : o.members) {
                    std::cout << (first ? "" : ",") << m;
                    first = false;
                }
                std::cout << "\n";
            } else if (!file.empty()) {
                emit_distribution(collapse_by_symmetry(load_distribution(file)), sym_out);
            } else {
                throw CLI::CallForHelp();
            }
        } else if (*complexity) {
            const auto d = load_distribution(file);
            for (const auto& s : strings) {
                const double bits = ctm_complexity(d, s);
                std::cout << s << " bits=" << bits << " rank=" << rank_of(d, s, false)
                          << " rank_in_length=" << rank_of(d, s, true) << "\n";
            }
        } else if (*pi) {
            const auto pi_text = pi_digits(digits);
            if (!ratios) {
                emit(pi_text + "\n", pi_out);
            } else {
                auto eng = make_engine(seed.value_or(0));
                std::string random_digits(digits, '0');
                for (auto& c : random_digits) c = static_cast<char>('0' + uniform_below(eng, 10));
                const nlohmann::json j{{"digits", digits},
                                       {"seed", seed.value_or(0)},
                                       {"pi_ratio", compression_ratio(pi_text)},
                                       {"random_ratio", compression_ratio(random_digits)}};
                emit(j.dump(2) + "\n", pi_out);
            }
        }
    } catch (const CLI::CallForHelp&) {
        std::cerr << "symmetry: pass one of --count, --string or --file\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
