#include "azdual/derivatives.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "azdual/error.hpp"

namespace azd {

MatchingResult best_matching(std::size_t nx, std::size_t ny,
                             const std::function<bool(std::size_t, std::size_t)>& rel, bool check) {
    if (check)
    for (std::size_t x1 = 0; x1 < nx; ++x1)
        for (std::size_t x2 = 0; x2 <= x1; ++x2)
            for (std::size_t y1 = 0; y1 < ny; ++y1)
                for (std::size_t y2 = 0; y2 <= y1; ++y2)
                    if (rel(y1, x1) && rel(y2, x1) && rel(y2, x2))
                        ensure(rel(y1, x2), "matching relation is not traversable");

    MatchingResult r;
    r.f.assign(nx, -1);
    std::vector<bool> used(ny, false);
    for (std::size_t k = nx; k-- > 0;) {
        for (std::size_t y = 0; y < ny; ++y)
            if (!used[y] && rel(y, k)) {
                used[y] = true;
                r.f[k] = static_cast<int>(y);
                break;
            }
    }
    for (std::size_t x = 0; x < nx; ++x) (r.f[x] >= 0 ? r.x0 : r.xc).push_back(x);
    for (std::size_t y = 0; y < ny; ++y)
        if (!used[y]) r.yc.push_back(y);
    return r;
}

namespace {

Segment seg2(int b2, int e2, int line) { return Segment::make(b2, e2, line); }

bool seg_le(const Segment& a, const Segment& b) {
    return a == b || seg_lt_raw(a.b.twice, a.e.twice, b.b.twice, b.e.twice);
}

std::vector<SignedSeg> items_on(const SignedSymMultisegment& s, int line) {
    std::vector<SignedSeg> v;
    for (auto& x : s.items)
        if (x.seg.line == line) v.push_back(x);
    canonicalize(v);
    return v;
}

SignedSymMultisegment replace_line(const SignedSymMultisegment& s, int line, std::vector<SignedSeg> part) {
    SignedSymMultisegment r;
    r.lines = s.lines;
    for (auto& x : s.items)
        if (x.seg.line != line) r.items.push_back(x);
    r.items.insert(r.items.end(), part.begin(), part.end());
    canonicalize(r.items);
    return r;
}

void remove_one(std::vector<SignedSeg>& v, const Segment& d) {
    if (d.empty()) return;
    auto it = std::find_if(v.begin(), v.end(), [&](const SignedSeg& x) { return x.seg == d; });
    ensure(it != v.end(), "correction removes absent segment " + d.str());
    v.erase(it);
}

// indices of v (descending storage) selected by pred, returned in ascending seg_lt order
std::vector<std::size_t> ascending(const std::vector<SignedSeg>& v, const std::function<bool(std::size_t)>& pred) {
    std::vector<std::size_t> r;
    for (std::size_t i = v.size(); i-- > 0;)
        if (pred(i)) r.push_back(i);
    return r;
}

DerivativeResult ugly_derivative(const SignedSymMultisegment& s, int line, HalfInt x, int side) {
    require(side == 0 || side == 1, "ugly derivative needs side 0 or 1");
    auto v = items_on(s, line);
    const int xs = x.twice;
    auto ax = ascending(v, [&](std::size_t i) { return v[i].seg.side == side && v[i].seg.e.twice == xs; });
    auto ax1 = ascending(v, [&](std::size_t i) { return v[i].seg.side == side && v[i].seg.e.twice == xs - 2; });
    auto mr = best_matching(ax1.size(), ax.size(),
                            [&](std::size_t y, std::size_t xx) { return seg_le(v[ax1[xx]].seg, v[ax[y]].seg); });
    std::vector<bool> used(v.size(), false);
    std::vector<SignedSeg> out = v;
    for (std::size_t y : mr.yc) {
        std::size_t i = ax[y];
        Segment dv = seg_dual(v[i].seg);
        std::size_t j = 0;
        while (j < v.size() && (used[j] || v[j].seg != dv)) ++j;
        ensure(j < v.size(), "dual of " + v[i].seg.str() + " missing");
        used[j] = true;
        out[i].seg = seg_trunc(v[i].seg, Trunc::end);
        out[j].seg = seg_trunc(v[j].seg, Trunc::begin);
    }
    canonicalize(out);
    return {replace_line(s, line, std::move(out)), static_cast<int>(mr.yc.size())};
}

}  // namespace

DerivativeResult derivative(const SignedSymMultisegment& s, int line, HalfInt x, int side) {
    require(line >= 0 && line < static_cast<int>(s.lines.size()), "line index out of range");
    const LineDecl& ld = s.lines[line];
    require(x.twice != 0, "derivative needs x != 0");
    require(ld.on_grid(x), "x = " + x.str() + " is off the grid of line " + ld.id);
    if (ld.cls == LineClass::ugly) return ugly_derivative(s, line, x, side);

    const bool good = ld.cls == LineClass::good;
    auto v = items_on(s, line);
    const int xs = x.twice;
    const Segment SX = seg2(-xs, xs, line);          // [-x,x]
    const Segment SXm = seg2(-xs + 2, xs - 2, line);  // [-x+1,x-1], empty for x = 1/2
    const Segment P = seg2(-xs + 2, xs, line);        // [-x+1,x]
    const Segment Q = seg2(-xs, xs - 2, line);        // [-x,x-1]

    auto count = [&](const Segment& d) {
        return static_cast<int>(std::count_if(v.begin(), v.end(), [&](const SignedSeg& a) { return a.seg == d; }));
    };
    auto eps_of = [&](const Segment& d) {
        for (auto& a : v)
            if (a.seg == d) return a.eps;
        return 0;
    };
    auto first = [&](const Segment& d) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i].seg == d) return static_cast<long>(i);
        return -1L;
    };
    auto last = [&](const Segment& d) {
        for (std::size_t i = v.size(); i-- > 0;)
            if (v[i].seg == d) return static_cast<long>(i);
        return -1L;
    };

    const bool half = xs == 1;
    const int t = xs > 0 ? count(Q) : 0;
    long i0 = -1, j0 = -1;
    bool star = false;
    if (good) {
        bool has_sxm = half || count(SXm) > 0;
        int eps_sxm = half ? 1 : eps_of(SXm);
        star = xs > 0 && count(SX) > 0 && has_sxm && eps_of(SX) * eps_sxm == ((t + 1) % 2 == 0 ? 1 : -1);
        if (star) {
            i0 = first(SX);
            if (!half) j0 = first(SXm);
        }
    } else if (t % 2 == 1) {
        // The greedy pass meets j0 last among its copies and hands out i0
        // last among its copies, so the forbidden pair leaves one copy unprotected.
        i0 = first(P);
        j0 = last(Q);
        ensure(i0 >= 0 && j0 >= 0, "odd t without its pair");
    }

    auto ax = ascending(v, [&](std::size_t i) {
        return v[i].seg.e.twice == xs && (good ? static_cast<long>(i) != i0 : true);
    });
    auto ax1 = ascending(v, [&](std::size_t i) {
        return v[i].seg.e.twice == xs - 2 && (good ? static_cast<long>(i) != j0 : true);
    });
    auto rel = [&](std::size_t y, std::size_t xx) {
        std::size_t iy = ax[y], ix = ax1[xx];
        if (!good && static_cast<long>(iy) == i0 && static_cast<long>(ix) == j0) return false;
        return seg_le(v[ix].seg, v[iy].seg);
    };
    auto mr = best_matching(ax1.size(), ax.size(), rel, good);

    std::vector<std::size_t> ac;
    for (std::size_t y : mr.yc) ac.push_back(ax[y]);
    int c = 0;
    for (std::size_t i : ac)
        if (v[i].seg == SX) ++c;

    // dual indices for the non-centered unprotected segments
    std::vector<int> kind(v.size(), 0);  // 1 end, 2 begin, 3 both
    std::vector<bool> taken(v.size(), false);
    for (std::size_t i : ac) {
        if (v[i].seg == SX) {
            kind[i] = 3;
            continue;
        }
        kind[i] = 1;
        Segment dv = seg_dual(v[i].seg);
        std::size_t j = 0;
        while (j < v.size() && (taken[j] || kind[j] != 0 || v[j].seg != dv)) ++j;
        ensure(j < v.size(), "dual of " + v[i].seg.str() + " missing");
        taken[j] = true;
        kind[j] = 2;
    }

    const int eps_sx = eps_of(SX);
    std::vector<SignedSeg> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Segment d = v[i].seg;
        if (kind[i] == 1) d = seg_trunc(d, Trunc::end);
        else if (kind[i] == 2) d = seg_trunc(d, Trunc::begin);
        else if (kind[i] == 3) d = seg_trunc(d, Trunc::both);
        if (d.empty()) continue;
        int sign = 1;
        if (good && d.centered()) {
            sign = eps_of(d);
            if (sign == 0) {
                ensure(d == SXm && eps_sx != 0, "new centered segment " + d.str() + " has no sign source");
                sign = (t % 2 == 0 ? 1 : -1) * eps_sx;
            }
        }
        out.push_back({d, sign});
    }

    if (c % 2 == 1) {
        auto sign_in_out = [&](const Segment& d) {
            for (auto& a : out)
                if (a.seg == d) return a.eps;
            return 0;
        };
        if (good && !star && t >= 1) {
            int s_sxm = half ? 1 : sign_in_out(SXm);
            remove_one(out, P);
            remove_one(out, Q);
            out.push_back({SX, eps_sx});
            if (!half) {
                ensure(s_sxm != 0, "correction needs [-x+1,x-1] in the naive result");
                out.push_back({SXm, s_sxm});
            }
        } else if (good && star) {
            remove_one(out, SX);
            remove_one(out, SXm);
            out.push_back({P, 1});
            out.push_back({Q, 1});
        } else if (!good) {
            remove_one(out, SXm);
            remove_one(out, SX);
            out.push_back({Q, 1});
            out.push_back({P, 1});
        }
    }
    canonicalize(out);
    return {replace_line(s, line, std::move(out)), static_cast<int>(ac.size())};
}

std::string derivative_L_precondition(const SignedSymMultisegment& s, int line) {
    if (line < 0 || line >= static_cast<int>(s.lines.size())) return "line index out of range";
    const LineDecl& ld = s.lines[line];
    if (ld.cls == LineClass::ugly) return "the L([-1,0]) derivative needs a self-dual line";
    if (ld.grid != Grid::integral) return "the L([-1,0]) derivative needs an integral grid";
    int emax = 0;
    for (auto& x : s.items)
        if (x.seg.line == line) emax = std::max(emax, x.seg.e.twice);
    // y = -1 is always required: the suppression count below assumes m[-1,-1] <= m[-2,-2]
    for (int y2 = std::min(-emax + 2, -2); y2 < 0; y2 += 2)
        if (derivative(s, line, HalfInt::from_twice(y2)).k != 0)
            return "data is not " + HalfInt::from_twice(y2).str() + "-reduced";
    return {};
}

DerivativeResult derivative_L(const SignedSymMultisegment& s, int line) {
    std::string why = derivative_L_precondition(s, line);
    require(why.empty(), why);
    auto v = items_on(s, line);
    auto count = [&](int b, int e) {
        Segment d = seg2(2 * b, 2 * e, line);
        return static_cast<int>(std::count_if(v.begin(), v.end(), [&](const SignedSeg& a) { return a.seg == d; }));
    };
    const int n = std::max(count(-1, 0) - count(-2, -2) + count(-1, -1), 0);
    ensure(n <= count(-1, 0), "suppression count exceeds the multiplicity of [-1,0]");

    const Segment z = seg2(0, 0, line), m10 = seg2(-2, 0, line), p01 = seg2(0, 2, line);
    const int before = degree(SignedSymMultisegment{s.lines, v});
    std::vector<SignedSeg> out;
    int drop_m10 = n, drop_p01 = n;
    for (auto& a : v) {
        SignedSeg r = a;
        if (a.seg == m10 && drop_m10 > 0) {
            --drop_m10;
            continue;
        }
        if (a.seg == p01 && drop_p01 > 0) {
            --drop_p01;
            continue;
        }
        if (a.seg.e.twice == 0 && a.seg != z && a.seg != m10) r.seg = seg_trunc(a.seg, Trunc::end2);
        else if (a.seg.b.twice == 0 && a.seg != z && a.seg != p01) r.seg = seg_trunc(a.seg, Trunc::begin2);
        if (!r.seg.empty()) out.push_back(r);
    }
    canonicalize(out);
    const int removed = before - degree(SignedSymMultisegment{s.lines, out});
    ensure(removed % 4 == 0, "L([-1,0]) derivative removed a degree not divisible by 4");
    return {replace_line(s, line, std::move(out)), removed / 4};
}

ReducedReport reduced_report(const SignedSymMultisegment& s) {
    ReducedReport rep;
    for (int line = 0; line < static_cast<int>(s.lines.size()); ++line) {
        const LineDecl& ld = s.lines[line];
        LineReduced lr;
        lr.line = line;
        int r2 = 0;
        bool any = false;
        for (auto& x : s.items)
            if (x.seg.line == line) {
                any = true;
                r2 = std::max({r2, std::abs(x.seg.b.twice), std::abs(x.seg.e.twice)});
            }
        if (!any) continue;
        for (int side = 0; side < (ld.cls == LineClass::ugly ? 2 : 1); ++side)
            for (int x2 = -(r2 + 2); x2 <= r2 + 2; ++x2) {
                if (x2 == 0 || !ld.on_grid(HalfInt::from_twice(x2))) continue;
                int k = derivative(s, line, HalfInt::from_twice(x2), side).k;
                lr.orders.push_back({HalfInt::from_twice(x2), k});
                if (k != 0) lr.x_reduced = false;
            }
        if (derivative_L_precondition(s, line).empty()) lr.L_order = derivative_L(s, line).k;
        if (!lr.x_reduced || lr.L_order > 0) rep.reduced = false;
        rep.lines.push_back(std::move(lr));
    }
    return rep;
}

}  // namespace azd
