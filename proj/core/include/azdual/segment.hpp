#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "azdual/halfint.hpp"

namespace azd {

// Side marker: kSelfDual for good/bad lines, 0 (rho) or 1 (rho dual) on ugly pairs.
inline constexpr int kSelfDual = -1;

struct Segment {
    int line = 0;
    int side = kSelfDual;
    HalfInt b;
    HalfInt e;

    static constexpr Segment make(int b2, int e2, int line = 0, int side = kSelfDual) {
        return Segment{line, side, HalfInt::from_twice(b2), HalfInt::from_twice(e2)};
    }

    // empty <=> e = b - 1 (or shorter, which callers never keep)
    constexpr bool empty() const { return e.twice < b.twice; }
    constexpr HalfInt center() const { return HalfInt::from_twice((b.twice + e.twice) / 2); }
    constexpr int length() const { return (e.twice - b.twice) / 2 + 1; }
    constexpr bool centered() const { return b.twice + e.twice == 0; }

    constexpr auto operator<=>(const Segment&) const = default;

    // "[b,e]" without line annotation
    std::string str() const;
};

struct SegProps {
    HalfInt b, e, c;
    int l;
};

SegProps seg_props(const Segment& d);

// [b,e] -> [-e,-b]; swaps side on ugly pairs.
constexpr Segment seg_dual(const Segment& d) {
    Segment r = d;
    r.b = -d.e;
    r.e = -d.b;
    if (d.side != kSelfDual) r.side = 1 - d.side;
    return r;
}

enum class Trunc { end, begin, both, end2, begin2 };

// Removes one or two coefficients; an exhausted segment comes back as
// the canonical empty [b, b-1].
Segment seg_trunc(const Segment& d, Trunc mode);

// [x1,y1] < [x2,y2] iff x1 < x2, or x1 = x2 and y1 > y2.
// Throws DomainError for segments on different lines.
bool seg_lt(const Segment& a, const Segment& b);

// Same relation without the line check, on raw doubled coordinates.
constexpr bool seg_lt_raw(int b1, int e1, int b2, int e2) {
    return b1 < b2 || (b1 == b2 && e1 > e2);
}

// a precedes b: linked (union is a segment, neither contains the other)
// and b sits to the right.
bool seg_precedes(const Segment& a, const Segment& b);

constexpr bool precedes_raw(int b1, int e1, int b2, int e2) {
    return b1 < b2 && e1 < e2 && b2 <= e1 + 2;
}

}  // namespace azd
