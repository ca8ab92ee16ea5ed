#pragma once

// Distribution files (JSON, canonical and self-describing), CSV export and
// correlation reports.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "errors.hpp"
#include "pattern_distribution.hpp"
#include "rank_stats.hpp"

namespace algoprob {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "algoprob 0.1.0";
inline constexpr double kFrequencyTolerance = 1e-12;

inline nlohmann::json to_json(const PatternDistribution& d) {
    nlohmann::json meta;
    meta["source"] = d.source;
    meta["seed"] = d.seed ? nlohmann::json(*d.seed) : nlohmann::json(nullptr);
    meta["total_runs"] = d.total_runs;
    meta["contributing_runs"] = d.contributing_runs;
    meta["tool_version"] = kToolVersion;

    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : d.entries())
        entries.push_back({{"string", e.string}, {"count", e.count}, {"frequency", e.frequency}});
    return {{"format_version", kFormatVersion}, {"metadata", std::move(meta)}, {"entries", std::move(entries)}};
}

inline std::string serialize(const PatternDistribution& d) { return to_json(d).dump(2) + "\n"; }

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw LoadError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

inline std::uint64_t unsigned_field(const nlohmann::json& j, const char* name) {
    const auto& v = field(j, name);
    if (!v.is_number_unsigned()) throw LoadError(std::string("field \"") + name + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace detail

inline PatternDistribution from_json(const nlohmann::json& j) {
    const auto& version = detail::field(j, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
        throw LoadError("field \"format_version\": unsupported version " + version.dump());

    const auto& meta = detail::field(j, "metadata");
    PatternDistribution d;
    const auto& source = detail::field(meta, "source");
    if (!source.is_object()) throw LoadError("field \"metadata.source\" must be an object");
    for (const auto& [key, value] : source.items()) {
        if (!value.is_string()) throw LoadError("field \"metadata.source." + key + "\" must be a string");
        d.source[key] = value.get<std::string>();
    }
    const auto& seed = detail::field(meta, "seed");
    if (!seed.is_null()) {
        if (!seed.is_number_unsigned()) throw LoadError("field \"metadata.seed\" must be null or an unsigned integer");
        d.seed = seed.get<std::uint64_t>();
    }
    d.total_runs = detail::unsigned_field(meta, "total_runs");
    d.contributing_runs = detail::unsigned_field(meta, "contributing_runs");
    if (d.contributing_runs > d.total_runs) throw LoadError("field \"metadata.contributing_runs\" exceeds total_runs");

    const auto& entries = detail::field(j, "entries");
    if (!entries.is_array()) throw LoadError("field \"entries\" must be an array");
    std::set<BitString> seen;
    for (const auto& e : entries) {
        const auto& s = detail::field(e, "string");
        if (!s.is_string() || s.get<std::string>().empty() || !is_bitstring(s.get<std::string>()))
            throw LoadError("field \"entries.string\" must be a non-empty binary string");
        const auto str = s.get<std::string>();
        if (!seen.insert(str).second) throw LoadError("field \"entries.string\": duplicate entry \"" + str + "\"");
        const auto count = detail::unsigned_field(e, "count");
        if (count == 0) throw LoadError("field \"entries.count\" must be positive for \"" + str + "\"");
        d.add(str, count);
    }
    for (const auto& e : entries) {
        const auto& f = detail::field(e, "frequency");
        if (!f.is_number()) throw LoadError("field \"entries.frequency\" must be a number");
        const auto str = e.at("string").get<std::string>();
        if (std::abs(f.get<double>() - d.frequency(str)) > kFrequencyTolerance)
            throw LoadError("field \"entries.frequency\" for \"" + str + "\" does not match count / total");
    }
    return d;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

inline void save_distribution(const PatternDistribution& d, const std::filesystem::path& path) {
    write_text(path, serialize(d));
}

inline PatternDistribution load_distribution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

inline std::string to_csv(const PatternDistribution& d) {
    std::string out = "string,count,frequency\n";
    char buf[64];
    for (const auto& e : d.entries()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.frequency);
        out += e.string + "," + std::to_string(e.count) + "," + buf + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const CorrelationReport& r) {
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < r.pairs.strings.size(); ++i)
        pairs.push_back({{"string", r.pairs.strings[i]}, {"a", r.pairs.a[i]}, {"b", r.pairs.b[i]}});
    return {{"k", r.k},
            {"support_policy", to_string(r.policy)},
            {"pair_count", r.pair_count},
            {"rho", r.rho},
            {"p_value", r.p_value},
            {"permutations", r.permutations},
            {"seed", r.seed},
            {"sources", {{"a", r.source_a}, {"b", r.source_b}}},
            {"pairs", std::move(pairs)},
            {"tool_version", kToolVersion}};
}

} // namespace algoprob
