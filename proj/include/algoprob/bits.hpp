#pragma once

#include <algorithm>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace algoprob {

// Binary strings are stored as text over {'0','1'}. This keeps them directly
// usable as map keys and in files.
using BitString = std::string;

inline bool is_bitstring(std::string_view s) noexcept {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

inline void require_bitstring(std::string_view s, std::string_view what) {
    if (!is_bitstring(s))
        throw ParameterError(std::string(what) + ": not a binary string: \"" + std::string(s) + "\"");
}

inline BitString reversed(std::string_view s) { return BitString(s.rbegin(), s.rend()); }

inline BitString complemented(std::string_view s) {
    BitString out(s);
    for (auto& c : out) c = (c == '0') ? '1' : '0';
    return out;
}

} // namespace algoprob
