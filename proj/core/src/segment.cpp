#include "azdual/segment.hpp"

#include <charconv>

#include "azdual/error.hpp"

namespace azd {

std::string HalfInt::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::optional<HalfInt> HalfInt::parse(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    std::string_view num = slash == std::string_view::npos ? s : trim(s.substr(0, slash));
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    int v = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc() || p != num.data() + num.size()) return std::nullopt;
    if (slash == std::string_view::npos) return HalfInt::of(v);
    auto den = trim(s.substr(slash + 1));
    if (den != "2" || v % 2 == 0) return std::nullopt;  // only proper halves, "4/2" is rejected
    return HalfInt::from_twice(v);
}

std::string Segment::str() const { return "[" + b.str() + "," + e.str() + "]"; }

SegProps seg_props(const Segment& d) { return SegProps{d.b, d.e, d.center(), d.length()}; }

Segment seg_trunc(const Segment& d, Trunc mode) {
    Segment r = d;
    switch (mode) {
        case Trunc::end: r.e = r.e - 1; break;
        case Trunc::begin: r.b = r.b + 1; break;
        case Trunc::both: r.b = r.b + 1; r.e = r.e - 1; break;
        case Trunc::end2: r.e = r.e - 2; break;
        case Trunc::begin2: r.b = r.b + 2; break;
    }
    if (r.e.twice < r.b.twice - 2) r.e = r.b - 1;
    return r;
}

static void same_line(const Segment& a, const Segment& b) {
    if (a.line != b.line || a.side != b.side)
        throw DomainError("segments " + a.str() + " and " + b.str() + " lie on different lines");
}

bool seg_lt(const Segment& a, const Segment& b) {
    same_line(a, b);
    return seg_lt_raw(a.b.twice, a.e.twice, b.b.twice, b.e.twice);
}

bool seg_precedes(const Segment& a, const Segment& b) {
    same_line(a, b);
    return precedes_raw(a.b.twice, a.e.twice, b.b.twice, b.e.twice);
}

}  // namespace azd
