#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace azd {

// Exact element of (1/2)Z, stored doubled.
struct HalfInt {
    int twice = 0;

    static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
    static constexpr HalfInt of(int v) { return HalfInt{2 * v}; }

    constexpr bool integral() const { return twice % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt{-twice}; }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt{twice + o.twice}; }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt{twice - o.twice}; }
    // shift by whole units
    constexpr HalfInt operator+(int k) const { return HalfInt{twice + 2 * k}; }
    constexpr HalfInt operator-(int k) const { return HalfInt{twice - 2 * k}; }

    constexpr auto operator<=>(const HalfInt&) const = default;

    // "k" or "k/2"
    std::string str() const;
    static std::optional<HalfInt> parse(std::string_view s);
};

}  // namespace azd
