// Copyright 2026 The romlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "romlift/error.hpp"

namespace romlift {

/// A point of {0,1}^n. The string "b0 b1 ... b(n-1)" maps to the integer with b0 as
/// the most significant bit, so lexicographic and numeric order agree.
using Point = std::uint32_t;
/// A value of {0,1}^m, same encoding as Point.
using Value = std::uint32_t;

inline constexpr int kMaxPointBits = 16;
inline constexpr int kMaxValueBits = 16;

/// Fixed-width bit string (seeds, PRG outputs, measured outputs).
struct Bits {
    std::uint64_t value = 0;
    int width = 0;

    constexpr Bits() = default;
    constexpr Bits(std::uint64_t v, int w) : value(v), width(w) {
    }

    /// Character `i` counted from the left (the most significant bit).
    constexpr bool at(int i) const {
        return ((value >> (width - 1 - i)) & 1u) != 0;
    }

    std::string str() const {
        std::string out(static_cast<std::size_t>(width), '0');
        for (int i = 0; i < width; ++i) {
            if (at(i)) {
                out[static_cast<std::size_t>(i)] = '1';
            }
        }
        return out;
    }

    static Bits parse(std::string_view text) {
        if (text.size() > 63) {
            throw ParseError("bit string longer than 63 characters");
        }
        Bits b{0, static_cast<int>(text.size())};
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw ParseError("expected a bit string, got '" + std::string(text) + "'");
            }
            b.value = (b.value << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return b;
    }

    friend constexpr auto operator<=>(const Bits &, const Bits &) = default;
};

/// Renders `v` as a `width`-character bit string.
inline std::string bit_string(std::uint64_t v, int width) {
    return Bits{v, width}.str();
}

inline constexpr std::uint64_t low_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

}  // namespace romlift
