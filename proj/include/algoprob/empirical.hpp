#pragma once

// Real-world data as binary k-tuple distributions, plus two small
// demonstrations: decimal digits of pi from a spigot, and lossless
// compressibility measured with DEFLATE.

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "pattern_distribution.hpp"

namespace algoprob {

enum class Binarization { RawBits, ThresholdMedian };

inline std::string to_string(Binarization b) { return b == Binarization::RawBits ? "rawbits" : "median"; }

struct BitStream {
    BitString bits;
    Provenance origin;
};

inline double median_of(std::span<const std::uint8_t> values) {
    std::vector<std::uint8_t> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (static_cast<double>(v[m - 1]) + v[m]) / 2.0;
}

// RawBits: 8 bits per byte, MSB first. ThresholdMedian: one bit per byte,
// 1 iff the byte value is strictly above the median (mean of the two middle
// values for even lengths).
inline BitStream binarize(std::span<const std::uint8_t> bytes, Binarization method, std::string origin_name = "memory") {
    if (bytes.empty()) throw ParameterError("cannot binarize an empty input");
    BitStream out;
    out.origin = {{"kind", "ingest"}, {"file", std::move(origin_name)}, {"binarize", to_string(method)},
                  {"bytes", std::to_string(bytes.size())}};
    if (method == Binarization::RawBits) {
        out.bits.reserve(bytes.size() * 8);
        for (const std::uint8_t b : bytes)
            for (int i = 7; i >= 0; --i) out.bits.push_back(static_cast<char>('0' + ((b >> i) & 1U)));
    } else {
        const double median = median_of(bytes);
        out.bits.reserve(bytes.size());
        for (const std::uint8_t b : bytes) out.bits.push_back(b > median ? '1' : '0');
    }
    return out;
}

inline PatternDistribution tuple_counts(const BitStream& b, std::size_t k, Windowing mode = Windowing::Overlapping) {
    require_bitstring(b.bits, "bit stream");
    PatternDistribution d;
    d.source = b.origin;
    if (d.source.empty()) d.source = {{"kind", "ingest"}};
    d.source["k"] = std::to_string(k);
    d.source["windowing"] = to_string(mode);
    const auto windows = count_windows(d, b.bits, k, mode);
    d.total_runs = windows;
    d.contributing_runs = windows;
    return d;
}

inline constexpr std::size_t kMinCompressionInput = 64;

// compressed size / original size, zlib at Z_BEST_COMPRESSION.
inline double compression_ratio(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMinCompressionInput)
        throw ParameterError("compression ratio needs at least " + std::to_string(kMinCompressionInput) + " bytes");
    uLongf dest_len = compressBound(static_cast<uLong>(bytes.size()));
    std::vector<Bytef> dest(dest_len);
    const int rc = compress2(dest.data(), &dest_len, bytes.data(), static_cast<uLong>(bytes.size()), Z_BEST_COMPRESSION);
    if (rc != Z_OK) throw Error("zlib compress2 failed with code " + std::to_string(rc));
    return static_cast<double>(dest_len) / static_cast<double>(bytes.size());
}

inline double compression_ratio(std::string_view text) {
    return compression_ratio(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline constexpr std::size_t kMaxPiDigits = 100000;

// First `count` decimal digits of pi ("314159..."), by the base-10000
// Rabinowitz-Wagon spigot. Each pass consumes 14 series terms and yields
// 4 digits. Group values may exceed 9999, so carries are resolved after all
// groups are produced; two guard groups absorb truncation error.
inline std::string pi_digits(std::size_t count) {
    if (count < 1 || count > kMaxPiDigits)
        throw ParameterError("pi digit count must be in [1, " + std::to_string(kMaxPiDigits) + "]");
    constexpr std::uint64_t base = 10000;
    const std::size_t groups = (count + 3) / 4 + 2;
    std::size_t terms = groups * 14;
    std::vector<std::uint64_t> f(terms + 1, base / 5);
    f[terms] = 0;

    std::vector<std::uint64_t> out;
    out.reserve(groups);
    std::uint64_t carry = 0;
    while (terms > 0) {
        std::uint64_t d = 0;
        std::uint64_t g = terms * 2;
        for (std::size_t b = terms;; ) {
            d += f[b] * base;
            f[b] = d % --g;
            d /= g--;
            if (--b == 0) break;
            d *= b;
        }
        out.push_back(carry + d / base);
        carry = d % base;
        terms -= 14;
    }
    for (std::size_t i = out.size(); i-- > 1;) {
        out[i - 1] += out[i] / base;
        out[i] %= base;
    }

    std::string digits;
    digits.reserve(out.size() * 4);
    for (const auto v : out) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%04u", static_cast<unsigned>(v));
        digits += buf;
    }
    digits.resize(count);
    return digits;
}

} // namespace algoprob
