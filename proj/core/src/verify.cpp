#include "azdual/verify.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "azdual/ad_core.hpp"
#include "azdual/derivatives.hpp"
#include "azdual/error.hpp"
#include "azdual/mw_gl.hpp"

namespace azd {

LineTable single_line(LineClass cls, Grid grid, const std::string& id) { return {LineDecl{id, cls, grid}}; }

namespace {

// smallest doubled value >= lo on the grid of `integral`
int grid_ceil(int lo2, bool integral) {
    int want = integral ? 0 : 1;
    int x = lo2;
    while (((x % 2) + 2) % 2 != want) ++x;
    return x;
}

bool integral_line(const LineDecl& L) { return L.grid == Grid::integral; }

}  // namespace

// ---- Langlands data enumeration ---------------------------------------------------------

namespace {

struct Unit {
    int line;
    int a;
    int weight;  // slots of kphi used
    bool good;
    bool ugly;
};

struct Admissible {
    LineTable lines;
    std::vector<Segment> segs;
    std::vector<Unit> units;
};

Admissible admissible(const EnumParams& p) {
    Admissible r;
    r.lines = p.lines.empty() ? single_line(LineClass::good, Grid::integral) : p.lines;
    require(p.N >= 0 && p.km >= 0 && p.kphi >= 0, "enumeration bounds must be nonnegative");
    for (int li = 0; li < static_cast<int>(r.lines.size()); ++li) {
        const LineDecl& L = r.lines[li];
        bool in = integral_line(L);
        std::vector<int> sides = L.cls == LineClass::ugly ? std::vector<int>{0, 1} : std::vector<int>{kSelfDual};
        for (int side : sides)
            for (int b2 = grid_ceil(-2 * p.N, in); b2 <= 2 * p.N; b2 += 2)
                for (int e2 = b2; b2 + e2 < 0; e2 += 2) r.segs.push_back(Segment::make(b2, e2, li, side));
        for (int a = in ? 1 : 2; a <= 2 * p.N + 1; a += 2) {
            switch (L.cls) {
                case LineClass::good: r.units.push_back({li, a, 1, true, false}); break;
                case LineClass::bad: r.units.push_back({li, a, 2, false, false}); break;
                case LineClass::ugly: r.units.push_back({li, a, 2, false, true}); break;
            }
        }
    }
    return r;
}

void push_unit(LanglandsData& d, const Unit& u, int eta) {
    if (u.ugly) {
        d.phi.push_back({u.line, 0, u.a, 0});
        d.phi.push_back({u.line, 1, u.a, 0});
    } else if (u.good) {
        d.phi.push_back({u.line, kSelfDual, u.a, eta});
    } else {
        d.phi.push_back({u.line, kSelfDual, u.a, 0});
        d.phi.push_back({u.line, kSelfDual, u.a, 0});
    }
}

// nondecreasing index sequences of length <= kmax
void multisets(int n, int kmax, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        f(cur);
        if (static_cast<int>(cur.size()) == kmax) return;
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

void enumerate_data(const EnumParams& p, const DataSink& sink) {
    Admissible A = admissible(p);
    if (p.sampled) {
        std::mt19937_64 rng(p.seed);
        auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        for (std::size_t s = 0; s < p.count; ++s) {
            LanglandsData d;
            d.lines = A.lines;
            int km = uni(0, p.km);
            for (int i = 0; i < km && !A.segs.empty(); ++i) d.n.push_back(A.segs[uni(0, static_cast<int>(A.segs.size()) - 1)]);
            int slots = uni(0, p.kphi);
            std::map<std::pair<int, int>, int> eta;
            while (slots > 0 && !A.units.empty()) {
                const Unit& u = A.units[uni(0, static_cast<int>(A.units.size()) - 1)];
                if (u.weight > slots) break;
                slots -= u.weight;
                int e = 0;
                if (u.good) {
                    auto [it, fresh] = eta.emplace(std::make_pair(u.line, u.a), 0);
                    if (fresh) it->second = uni(0, 1) ? 1 : -1;
                    e = it->second;
                }
                push_unit(d, u, e);
            }
            canonicalize(d);
            sink(d);
        }
        return;
    }

    std::vector<std::vector<int>> unit_sets;
    {
        std::vector<int> cur;
        std::function<void(int, int)> rec = [&](int start, int slots) {
            unit_sets.push_back(cur);
            for (int i = start; i < static_cast<int>(A.units.size()); ++i) {
                if (A.units[i].weight > slots) continue;
                cur.push_back(i);
                rec(i, slots - A.units[i].weight);
                cur.pop_back();
            }
        };
        rec(0, p.kphi);
    }
    multisets(static_cast<int>(A.segs.size()), p.km, [&](const std::vector<int>& nidx) {
        for (auto& uidx : unit_sets) {
            std::vector<int> distinct_good;
            for (int i : uidx)
                if (A.units[i].good && std::find(distinct_good.begin(), distinct_good.end(), i) == distinct_good.end())
                    distinct_good.push_back(i);
            for (unsigned mask = 0; mask < (1u << distinct_good.size()); ++mask) {
                LanglandsData d;
                d.lines = A.lines;
                for (int i : nidx) d.n.push_back(A.segs[i]);
                for (int i : uidx) {
                    int eta = 0;
                    for (std::size_t g = 0; g < distinct_good.size(); ++g)
                        if (distinct_good[g] == i) eta = (mask >> g) & 1u ? -1 : 1;
                    push_unit(d, A.units[i], eta);
                }
                canonicalize(d);
                sink(d);
            }
        }
    });
}

std::vector<LanglandsData> enumerate_data(const EnumParams& p) {
    std::vector<LanglandsData> out;
    enumerate_data(p, [&](const LanglandsData& d) { out.push_back(d); });
    return out;
}

// ---- symmetric enumeration -------------------------------------------------------------------

void enumerate_symmetric(const SymEnumParams& p, const SymSink& sink) {
    require(p.line >= 0 && p.line < static_cast<int>(p.lines.size()), "enumerate_symmetric: line out of range");
    const LineDecl& L = p.lines[p.line];
    const bool in = integral_line(L);
    const bool ugly = L.cls == LineClass::ugly;
    const bool bad = L.cls == LineClass::bad;
    const bool good = L.cls == LineClass::good;

    struct Atom {
        Segment seg;
        bool centered;
        int deg;
    };
    std::vector<Atom> atoms;
    int lo = grid_ceil(-p.bound2, in);
    for (int b2 = lo; b2 <= p.bound2; b2 += 2)
        for (int e2 = b2; e2 <= p.bound2; e2 += 2) {
            Segment d = Segment::make(b2, e2, p.line, ugly ? 0 : kSelfDual);
            if (ugly || b2 + e2 < 0) atoms.push_back({d, false, 2 * d.length()});
        }
    std::size_t first_centered = atoms.size();
    if (!ugly)
        for (int a2 = in ? 0 : 1; a2 <= p.bound2; a2 += 2) {
            Segment d = Segment::make(-a2, a2, p.line);
            atoms.push_back({d, true, d.length()});
        }

    int deg_cap = p.exact_degree >= 0 ? p.exact_degree : (p.max_degree >= 0 ? p.max_degree : INT_MAX);
    std::vector<int> cnt(atoms.size(), 0);

    auto emit = [&](int deg_used) {
        if (p.exact_degree >= 0 && deg_used != p.exact_degree) return;
        std::vector<std::size_t> cent;
        for (std::size_t i = first_centered; i < atoms.size(); ++i)
            if (cnt[i] > 0) cent.push_back(i);
        unsigned masks = good ? (1u << cent.size()) : 1u;
        for (unsigned mask = 0; mask < masks; ++mask) {
            SignedSymMultisegment s;
            s.lines = p.lines;
            for (std::size_t i = 0; i < first_centered; ++i)
                for (int k = 0; k < cnt[i]; ++k) {
                    s.items.push_back({atoms[i].seg, 1});
                    s.items.push_back({seg_dual(atoms[i].seg), 1});
                }
            for (std::size_t c = 0; c < cent.size(); ++c) {
                int eps = good && ((mask >> c) & 1u) ? -1 : 1;
                for (int k = 0; k < cnt[cent[c]]; ++k) s.items.push_back({atoms[cent[c]].seg, eps});
            }
            canonicalize(s.items);
            sink(s);
        }
    };

    std::function<void(std::size_t, int, int, int)> rec = [&](std::size_t i, int pairs, int centered, int deg) {
        if (i == atoms.size()) {
            emit(deg);
            return;
        }
        const Atom& at = atoms[i];
        int step = at.centered && bad ? 2 : 1;
        for (int k = 0;; k += step) {
            if (k > (at.centered ? centered : pairs)) break;
            if (deg + k * at.deg > deg_cap) break;
            cnt[i] = k;
            rec(i + 1, at.centered ? pairs : pairs - k, at.centered ? centered - k : centered, deg + k * at.deg);
        }
        cnt[i] = 0;
    };
    rec(0, p.max_pairs, p.max_centered, 0);
}

std::vector<SignedSymMultisegment> standard_sweep(int bound2, int max_pairs, int max_centered) {
    std::vector<SignedSymMultisegment> out;
    for (LineClass cls : {LineClass::good, LineClass::bad})
        for (Grid g : {Grid::integral, Grid::half_integral}) {
            SymEnumParams p;
            p.lines = single_line(cls, g);
            p.bound2 = bound2;
            p.max_pairs = max_pairs;
            p.max_centered = cls == LineClass::bad ? (max_centered + 1) / 2 * 2 : max_centered;
            enumerate_symmetric(p, [&](const SignedSymMultisegment& s) { out.push_back(s); });
        }
    return out;
}

// ---- closed forms -------------------------------------------------------------------------

const char* to_string(Family f) {
    switch (f) {
        case Family::good_reduced_same: return "good_reduced_same";
        case Family::good_reduced_opposite: return "good_reduced_opposite";
        case Family::good_small_opposite: return "good_small_opposite";
        case Family::good_small_same: return "good_small_same";
        case Family::good_top_same: return "good_top_same";
        case Family::good_top_opposite: return "good_top_opposite";
        case Family::bad_small_same: return "bad_small_same";
        case Family::bad_small_opposite: return "bad_small_opposite";
    }
    return "?";
}

std::vector<Family> all_families() {
    return {Family::good_reduced_same, Family::good_reduced_opposite, Family::good_small_opposite,
            Family::good_small_same,   Family::good_top_same,         Family::good_top_opposite,
            Family::bad_small_same,    Family::bad_small_opposite};
}

namespace {

int pm(int k) { return k % 2 == 0 ? 1 : -1; }  // (-1)^k for k >= 0 or any parity

struct Builder {
    SignedSymMultisegment s;
    explicit Builder(LineTable t) { s.lines = std::move(t); }
    // k copies of [b,e] (doubled units), sign used for centered segments only
    Builder& one(int b2, int e2, int k = 1, int eps = 1) {
        Segment d = Segment::make(b2, e2, 0);
        for (int i = 0; i < k; ++i) s.items.push_back({d, d.centered() ? eps : 1});
        return *this;
    }
    Builder& pair(int b2, int e2, int k = 1) {
        Segment d = Segment::make(b2, e2, 0);
        for (int i = 0; i < k; ++i) {
            s.items.push_back({d, 1});
            s.items.push_back({seg_dual(d), 1});
        }
        return *this;
    }
    SignedSymMultisegment done() {
        canonicalize(s.items);
        return s;
    }
};

// counts and signs on a single-line input
struct Shape {
    std::map<std::pair<int, int>, int> cnt;
    std::map<std::pair<int, int>, int> eps;
    int top2 = 0;  // largest doubled end
    int at(int b2, int e2) const {
        auto it = cnt.find({b2, e2});
        return it == cnt.end() ? 0 : it->second;
    }
    int sign(int b2, int e2) const {
        auto it = eps.find({b2, e2});
        return it == eps.end() ? 1 : it->second;
    }
};

std::optional<Shape> shape_of(const SignedSymMultisegment& s) {
    if (s.lines.size() != 1) return std::nullopt;
    Shape sh;
    for (auto& x : s.items) {
        if (x.seg.line != 0 || x.seg.side != kSelfDual) return std::nullopt;
        sh.cnt[{x.seg.b.twice, x.seg.e.twice}]++;
        if (x.seg.centered()) sh.eps[{x.seg.b.twice, x.seg.e.twice}] = x.eps;
        sh.top2 = std::max(sh.top2, x.seg.e.twice);
    }
    return sh;
}

bool same_data(SignedSymMultisegment a, SignedSymMultisegment b) {
    canonicalize(a.items);
    canonicalize(b.items);
    return a == b;
}

// ---- the eight families: build from parameters, and the predicted dual ----

// n0[0,0] + sum_{y=1..y0} [-y,y], eps([-y,y]) = (-1)^y eps0
SignedSymMultisegment build_reduced_same(const LineTable& t, int n0, int y0, int eps0) {
    Builder b(t);
    b.one(0, 0, n0, eps0);
    for (int y = 1; y <= y0; ++y) b.one(-2 * y, 2 * y, 1, pm(y) * eps0);
    return b.done();
}

SignedSymMultisegment dual_reduced_same(const LineTable& t, int n0, int y0, int eps0) {
    if (y0 == 0) return Builder(t).one(0, 0, n0, pm(n0 + 1) * eps0).done();
    if (n0 % 2 == 1) return build_reduced_same(t, n0, y0, eps0);
    Builder b(t);
    b.one(0, 0, n0 - 1, -eps0);
    for (int y = 1; y < y0; ++y) b.one(-2 * y, 2 * y, 1, -pm(y) * eps0);
    b.pair(-2 * y0, 0);
    return b.done();
}

// sum_{y=1/2..y0} [-y,y], eps([-1/2,1/2]) = -1, alternating
SignedSymMultisegment build_reduced_opposite(const LineTable& t, int y02) {
    Builder b(t);
    for (int y2 = 1, i = 0; y2 <= y02; y2 += 2, ++i) b.one(-y2, y2, 1, -pm(i));
    return b.done();
}

SignedSymMultisegment build_small_opposite(const LineTable& t, int c, int n, int eps) {
    return Builder(t).one(-1, 1, c, eps).pair(-1, -1, n).done();
}

SignedSymMultisegment dual_small_opposite(const LineTable& t, int c, int n, int eps) {
    bool star = c != 0 && eps == pm(n + 1);
    if (star) return build_small_opposite(t, n + 1, c - 1, pm(c));
    return build_small_opposite(t, n, c, pm(c));
}

SignedSymMultisegment build_small_same(const LineTable& t, int c0, int c1, int tt, int n, int e0, int e1) {
    return Builder(t).one(0, 0, c0, e0).one(-2, 2, c1, e1).pair(-2, 0, tt).pair(-2, -2, n).done();
}

SignedSymMultisegment dual_small_same(const LineTable& tb, int c0, int c1, int t, int n, int e0, int e1) {
    bool star = c0 != 0 && c1 != 0 && e0 * e1 == pm(t + 1);
    int C = c0 + c1;
    if (n > c0) return build_small_same(tb, c1, c0, t, n - c0 + c1, e1 * pm(C + 1), e0 * pm(C + 1));
    if (n == c0) return build_small_same(tb, c1, c0, t, c1, e1 * pm(C + 1), e0 * pm(C + 1));
    bool odd = (c0 - n) % 2 == 1;
    if (!star && (!odd || t == 0)) return build_small_same(tb, C - n, n, t, c1, e0 * pm(C + t + 1), e0 * pm(C + 1));
    if (!star) return build_small_same(tb, C - n + 1, n + 1, t - 1, c1, e0 * pm(C + t + 1), e0 * pm(C + 1));
    if (!odd) return build_small_same(tb, C - n - 2, n, t + 1, c1 - 1, e0 * pm(t + C), e0 * pm(C + 1));
    return build_small_same(tb, C - n - 1, n + 1, t, c1 - 1, e0 * pm(t + C), e0 * pm(C + 1));
}

// sign of [-y,y] in the top families, y >= 1
int top_same_sign(int y, int eps0, int t0) { return eps0 * pm(t0 + 1) * pm(y - 1); }

SignedSymMultisegment build_top_same(const LineTable& t, int e, int ne, int n1, int n0, int eps0) {
    int t0 = ne - n1;
    Builder b(t);
    for (int y = 2; y <= e; ++y) b.pair(-2 * y, -2 * y, ne);
    b.pair(-2, -2, n1);
    b.one(0, 0, n0, eps0);
    b.pair(-2, 0, t0);
    for (int y = 1; y <= e; ++y) b.one(-2 * y, 2 * y, 1, top_same_sign(y, eps0, t0));
    return b.done();
}

SignedSymMultisegment dual_top_same(const LineTable& t, int e, int ne, int n1, int n0, int eps0) {
    int t0 = ne - n1;
    bool odd = (n0 - n1) % 2 == 1;
    int top_sign = pm(n0 + e + 1) * eps0;
    Builder b(t);
    if (odd) {
        b.one(-2 * e, 2 * e, n1 + 1, top_sign);
        b.pair(-2 * e, 0, ne - n1);
        b.one(0, 0, n0 - n1, pm(ne) * eps0);
        for (int y = 1; y < e; ++y) b.one(-2 * y, 2 * y, 1, pm(n1) * top_same_sign(y, eps0, t0));
    } else {
        b.one(-2 * e, 2 * e, n1, top_sign);
        b.pair(-2 * e, 0, ne - n1 + 1);
        b.one(0, 0, n0 - n1 - 1, pm(ne + 1) * eps0);
        for (int y = 1; y < e; ++y) b.one(-2 * y, 2 * y, 1, pm(n1 + 1) * top_same_sign(y, eps0, t0));
    }
    return b.done();
}

// i-th centered segment from the bottom (i = 0 is [-1/2,1/2]) has sign (-1)^(n+1+i)
SignedSymMultisegment build_top_opposite(const LineTable& t, int e2, int n) {
    Builder b(t);
    for (int y2 = 1, i = 0; y2 <= e2; y2 += 2, ++i) {
        b.pair(-y2, -y2, n);
        b.one(-y2, y2, 1, pm(n + 1 + i));
    }
    return b.done();
}

SignedSymMultisegment dual_top_opposite(const LineTable& t, int e2, int n) {
    Builder b(t);
    b.one(-e2, e2, n + 1, pm((e2 + 1) / 2));
    for (int y2 = 1, i = 0; y2 < e2; y2 += 2, ++i) b.one(-y2, y2, 1, pm(n) * pm(n + 1 + i));
    return b.done();
}

SignedSymMultisegment build_bad_same(const LineTable& t, int c, int n) { return Builder(t).one(-1, 1, c).pair(-1, -1, n).done(); }

SignedSymMultisegment dual_bad_same(const LineTable& t, int c, int n) {
    if (n % 2 == 0) return build_bad_same(t, n, c);
    return build_bad_same(t, n - 1, c + 1);
}

SignedSymMultisegment build_bad_opposite(const LineTable& t, int c0, int c1, int tt, int n) {
    return Builder(t).one(0, 0, c0).one(-2, 2, c1).pair(-2, 0, tt).pair(-2, -2, n).done();
}

SignedSymMultisegment dual_bad_opposite(const LineTable& tb, int c0, int c1, int t, int n) {
    if (n > c0) return build_bad_opposite(tb, c1, c0, t, n - c0 + c1);
    bool ne = n % 2 == 0, te = t % 2 == 0;
    if (ne && te) return build_bad_opposite(tb, c0 - n + c1, n, t, c1);
    if (ne) return build_bad_opposite(tb, c0 - n + c1 + 2, n, t - 1, c1 + 1);
    if (te) return build_bad_opposite(tb, c0 - n - 1 + c1, n - 1, t + 1, c1);
    return build_bad_opposite(tb, c0 - n + c1 + 1, n - 1, t, c1 + 1);
}

std::string tuple(std::initializer_list<std::pair<const char*, int>> kv) {
    std::string s;
    for (auto& [k, v] : kv) {
        if (!s.empty()) s += ", ";
        s += std::string(k) + "=" + std::to_string(v);
    }
    return s;
}

struct Matched {
    Family f;
    SignedSymMultisegment dual;
};

std::optional<Matched> match(const SignedSymMultisegment& s) {
    auto shp = shape_of(s);
    if (!shp) return std::nullopt;
    const Shape& sh = *shp;
    const LineTable& t = s.lines;
    const LineDecl& L = t[0];
    const bool in = integral_line(L);

    if (L.cls == LineClass::good && in) {
        // reduced: only centered segments, one copy of each above [0,0]
        int n0 = sh.at(0, 0);
        if (n0 >= 1) {
            int y0 = sh.top2 / 2;
            int eps0 = sh.sign(0, 0);
            if (same_data(s, build_reduced_same(t, n0, y0, eps0)))
                return Matched{Family::good_reduced_same, dual_reduced_same(t, n0, y0, eps0)};
        }
        if (sh.top2 <= 2) {
            int c0 = sh.at(0, 0), c1 = sh.at(-2, 2), tt = sh.at(0, 2), n = sh.at(2, 2);
            int e0 = sh.sign(0, 0), e1 = sh.sign(-2, 2);
            if (same_data(s, build_small_same(t, c0, c1, tt, n, e0, e1)))
                return Matched{Family::good_small_same, dual_small_same(t, c0, c1, tt, n, e0, e1)};
        }
        if (sh.top2 >= 4) {
            int e = sh.top2 / 2;
            int ne = sh.at(2 * e, 2 * e), n1 = sh.at(2, 2), n0b = sh.at(0, 0);
            int eps0 = sh.sign(0, 0);
            if (n1 <= ne && n0b >= n1 + 1 && same_data(s, build_top_same(t, e, ne, n1, n0b, eps0)))
                return Matched{Family::good_top_same, dual_top_same(t, e, ne, n1, n0b, eps0)};
        }
    }
    if (L.cls == LineClass::good && !in) {
        if (sh.top2 >= 1 && same_data(s, build_reduced_opposite(t, sh.top2)))
            return Matched{Family::good_reduced_opposite, s};
        if (sh.top2 <= 1) {
            int c = sh.at(-1, 1), n = sh.at(1, 1), eps = sh.sign(-1, 1);
            if (same_data(s, build_small_opposite(t, c, n, eps)))
                return Matched{Family::good_small_opposite, dual_small_opposite(t, c, n, eps)};
        }
        if (sh.top2 >= 3) {
            int n = sh.at(sh.top2, sh.top2);
            if (same_data(s, build_top_opposite(t, sh.top2, n)))
                return Matched{Family::good_top_opposite, dual_top_opposite(t, sh.top2, n)};
        }
    }
    if (L.cls == LineClass::bad && !in && sh.top2 <= 1) {
        int c = sh.at(-1, 1), n = sh.at(1, 1);
        if (c % 2 == 0 && same_data(s, build_bad_same(t, c, n)))
            return Matched{Family::bad_small_same, dual_bad_same(t, c, n)};
    }
    if (L.cls == LineClass::bad && in && sh.top2 <= 2) {
        int c0 = sh.at(0, 0), c1 = sh.at(-2, 2), tt = sh.at(0, 2), n = sh.at(2, 2);
        if (c0 % 2 == 0 && c1 % 2 == 0 && same_data(s, build_bad_opposite(t, c0, c1, tt, n)))
            return Matched{Family::bad_small_opposite, dual_bad_opposite(t, c0, c1, tt, n)};
    }
    return std::nullopt;
}

}  // namespace

std::optional<SignedSymMultisegment> closed_form_dual(const SignedSymMultisegment& s) {
    auto m = match(s);
    if (!m) return std::nullopt;
    return m->dual;
}

std::optional<Family> match_family(const SignedSymMultisegment& s) {
    auto m = match(s);
    if (!m) return std::nullopt;
    return m->f;
}

std::vector<FixtureCase> family_fixtures(Family f, int K) {
    std::vector<FixtureCase> out;
    auto add = [&](std::string params, SignedSymMultisegment s) { out.push_back({f, std::move(params), std::move(s)}); };
    switch (f) {
        case Family::good_reduced_same: {
            auto t = single_line(LineClass::good, Grid::integral);
            for (int n0 = 1; n0 <= K; ++n0)
                for (int y0 = 0; y0 <= K; ++y0)
                    for (int e : {1, -1})
                        add(tuple({{"n0", n0}, {"y0", y0}, {"eps0", e}}), build_reduced_same(t, n0, y0, e));
            break;
        }
        case Family::good_reduced_opposite: {
            auto t = single_line(LineClass::good, Grid::half_integral);
            for (int y02 = 1; y02 <= 2 * K - 1; y02 += 2)
                add(tuple({{"2*y0", y02}}), build_reduced_opposite(t, y02));
            break;
        }
        case Family::good_small_opposite: {
            auto t = single_line(LineClass::good, Grid::half_integral);
            for (int c = 0; c <= K; ++c)
                for (int n = 0; n <= K; ++n)
                    for (int e : {1, -1}) {
                        if (c == 0 && e == -1) continue;
                        add(tuple({{"c", c}, {"n", n}, {"eps", e}}), build_small_opposite(t, c, n, e));
                    }
            break;
        }
        case Family::good_small_same: {
            auto t = single_line(LineClass::good, Grid::integral);
            for (int c0 = 0; c0 <= K; ++c0)
                for (int c1 = 0; c1 <= K; ++c1)
                    for (int tt = 0; tt <= K; ++tt)
                        for (int n = 0; n <= K; ++n)
                            for (int e0 : {1, -1})
                                for (int e1 : {1, -1}) {
                                    if ((c0 == 0 && e0 == -1) || (c1 == 0 && e1 == -1)) continue;
                                    add(tuple({{"c0", c0}, {"c1", c1}, {"t", tt}, {"n", n}, {"eps0", e0}, {"eps1", e1}}),
                                        build_small_same(t, c0, c1, tt, n, e0, e1));
                                }
            break;
        }
        case Family::good_top_same: {
            auto t = single_line(LineClass::good, Grid::integral);
            for (int e = 2; e <= K; ++e)
                for (int ne = 0; ne <= K; ++ne)
                    for (int n1 = 0; n1 <= ne; ++n1)
                        for (int n0 = n1 + 1; n0 <= K; ++n0)
                            for (int e0 : {1, -1})
                                add(tuple({{"e", e}, {"ne", ne}, {"n1", n1}, {"n0", n0}, {"eps0", e0}}),
                                    build_top_same(t, e, ne, n1, n0, e0));
            break;
        }
        case Family::good_top_opposite: {
            auto t = single_line(LineClass::good, Grid::half_integral);
            for (int e2 = 3; e2 <= 2 * K - 1; e2 += 2)
                for (int n = 0; n <= K; ++n) add(tuple({{"2*e", e2}, {"n", n}}), build_top_opposite(t, e2, n));
            break;
        }
        case Family::bad_small_same: {
            auto t = single_line(LineClass::bad, Grid::half_integral);
            for (int c = 0; c <= K; c += 2)
                for (int n = 0; n <= K; ++n) add(tuple({{"c", c}, {"n", n}}), build_bad_same(t, c, n));
            break;
        }
        case Family::bad_small_opposite: {
            auto t = single_line(LineClass::bad, Grid::integral);
            for (int c0 = 0; c0 <= K; c0 += 2)
                for (int c1 = 0; c1 <= K; c1 += 2)
                    for (int tt = 0; tt <= K; ++tt)
                        for (int n = 0; n <= K; ++n)
                            add(tuple({{"c0", c0}, {"c1", c1}, {"t", tt}, {"n", n}}), build_bad_opposite(t, c0, c1, tt, n));
            break;
        }
    }
    return out;
}

// ---- inverse derivative search ----------------------------------------------------------------

std::optional<SignedSymMultisegment> inverse_derivative_search(const SignedSymMultisegment& target, int line,
                                                               HalfInt x, int k, int bound, int side) {
    require(bound >= 0, "inverse_derivative_search needs a finite nonnegative bound");
    require(k >= 0, "derivative order must be nonnegative");
    require(line >= 0 && line < static_cast<int>(target.lines.size()), "line index out of range");
    if (k == 0) return target;

    SignedSymMultisegment off;
    off.lines = target.lines;
    int deg_on = 0;
    for (auto& it : target.items) {
        if (it.seg.line == line) deg_on += it.seg.length();
        else off.items.push_back(it);
    }
    SignedSymMultisegment want = target;
    canonicalize(want.items);

    SymEnumParams p;
    p.lines = target.lines;
    p.line = line;
    p.bound2 = 2 * bound;
    p.max_pairs = INT_MAX / 4;
    p.max_centered = INT_MAX / 4;
    p.exact_degree = deg_on + 2 * k;

    std::optional<SignedSymMultisegment> hit;
    enumerate_symmetric(p, [&](const SignedSymMultisegment& cand) {
        SignedSymMultisegment full = cand;
        full.items.insert(full.items.end(), off.items.begin(), off.items.end());
        canonicalize(full.items);
        if (!validate(full).empty()) return;
        DerivativeResult r = derivative(full, line, x, side);
        if (r.k != k) return;
        canonicalize(r.result.items);
        if (r.result != want) return;
        ensure(!hit, "two preimages " + describe(*hit) + " and " + describe(full) + " for one derivative");
        hit = full;
    });
    return hit;
}

// ---- property suites ----------------------------------------------------------------------------

const char* to_string(Suite s) {
    switch (s) {
        case Suite::involution: return "involution";
        case Suite::invariants: return "invariants";
        case Suite::commutation: return "commutation";
        case Suite::closed_form: return "closed_form";
        case Suite::roundtrip: return "roundtrip";
        case Suite::ugly: return "ugly";
    }
    return "?";
}

std::vector<Suite> all_suites() {
    return {Suite::involution, Suite::invariants, Suite::commutation, Suite::closed_form, Suite::roundtrip, Suite::ugly};
}

std::optional<Suite> suite_from_string(const std::string& name) {
    for (Suite s : all_suites())
        if (name == to_string(s)) return s;
    return std::nullopt;
}

bool Report::all_pass() const {
    for (auto& p : properties)
        if (p.failed) return false;
    if (appendix && appendix->emax_violations) return false;
    return true;
}

const PropertyResult* Report::find(const std::string& name) const {
    for (auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

namespace {

const std::vector<std::pair<Suite, std::vector<std::string>>>& suite_props() {
    static const std::vector<std::pair<Suite, std::vector<std::string>>> t = {
        {Suite::involution, {"involution"}},
        {Suite::invariants,
         {"degree", "emax", "sign_product", "stepwise_sign", "longest_first", "membership", "plus"}},
        {Suite::commutation, {"commutation"}},
        {Suite::closed_form, {"closed_form"}},
        {Suite::roundtrip, {"roundtrip"}},
        {Suite::ugly, {"ugly_reduction"}},
    };
    return t;
}

struct Tally {
    std::size_t checked = 0, failed = 0;
    std::size_t first_index = SIZE_MAX;
    std::string example;
};

using Tallies = std::map<std::string, Tally>;

class Checker {
public:
    Checker(Tallies& t, std::size_t idx, const SignedSymMultisegment& s) : t_(t), idx_(idx), s_(s) {}

    void check(const std::string& name, bool ok, const std::string& why = "") {
        Tally& x = t_[name];
        ++x.checked;
        if (ok) return;
        ++x.failed;
        if (idx_ < x.first_index) {
            x.first_index = idx_;
            x.example = "input " + describe(s_) + (why.empty() ? "" : "; " + why);
        }
    }

    // runs f, recording an exception as a failure of `name`
    template <class F>
    void guarded(const std::string& name, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            check(name, false, std::string("exception: ") + e.what());
        }
    }

private:
    Tallies& t_;
    std::size_t idx_;
    const SignedSymMultisegment& s_;
};

bool eq(SignedSymMultisegment a, SignedSymMultisegment b) {
    canonicalize(a.items);
    canonicalize(b.items);
    return a.items == b.items;
}

SignedSymMultisegment ugly_expected(const SignedSymMultisegment& s, int line) {
    Multisegment side0;
    for (auto& x : s.items)
        if (x.seg.line == line && x.seg.side == 0) side0.push_back(x.seg);
    SignedSymMultisegment r;
    r.lines = s.lines;
    for (auto& d : mw_transpose(side0)) {
        r.items.push_back({d, 1});
        r.items.push_back({seg_dual(d), 1});
    }
    canonicalize(r.items);
    return r;
}

void check_one(const SignedSymMultisegment& s, std::size_t idx, const std::set<std::string>& want, const AdFn& ad,
               Tallies& t) {
    Checker c(t, idx, s);
    auto on = [&](const char* p) { return want.count(p) > 0; };

    std::optional<SignedSymMultisegment> out;
    try {
        out = ad(s);
    } catch (const std::exception& e) {
        for (auto& p : want)
            if (p != "roundtrip") c.check(p, false, std::string("ad failed: ") + e.what());
    }
    const int nlines = static_cast<int>(s.lines.size());

    if (on("roundtrip"))
        c.guarded("roundtrip", [&] { c.check("roundtrip", eq(transfer(untransfer(s)), s)); });
    if (!out) return;
    const SignedSymMultisegment& d = *out;

    if (on("involution"))
        c.guarded("involution", [&] {
            auto back = ad(d);
            c.check("involution", eq(back, s), "ad(ad(s)) = " + describe(back));
        });
    if (on("membership")) {
        auto rep = validate(d);
        c.check("membership", rep.empty(), rep.empty() ? "" : rep.front().condition + " in " + describe(d));
    }
    if (on("plus")) c.check("plus", sign_product(d) == sign_product(s), "dual " + describe(d));

    for (int L = 0; L < nlines; ++L) {
        auto part = line_project(s, L);
        if (part.items.empty()) continue;
        auto dpart = line_project(d, L);
        bool good = s.lines[L].cls == LineClass::good;
        if (on("degree")) c.check("degree", degree(dpart) == degree(part), "dual " + describe(d));
        if (on("emax"))
            c.check("emax", !dpart.items.empty() && e_max(dpart) == e_max(part), "dual " + describe(d));
        if (good && on("sign_product"))
            c.check("sign_product", sign_product(d, L) == sign_product(s, L), "dual " + describe(d));
        if (good && on("stepwise_sign"))
            c.guarded("stepwise_sign", [&] {
                AdStep st = ad_step(s, L);
                c.check("stepwise_sign", sign_product(st.m1, L) * sign_product(st.rest, L) == sign_product(s, L));
            });
        if (on("longest_first"))
            c.guarded("longest_first", [&] {
                AdStep st = ad_step(s, L);
                int top = e_max(part).twice;
                int len = 0;
                for (auto& x : st.m1.items)
                    if (x.seg.e.twice == top) len = std::max(len, x.seg.length());
                bool ok = len > 0;
                for (auto& x : dpart.items)
                    if (x.seg.e.twice == top && x.seg.length() > len) ok = false;
                c.check("longest_first", ok, "dual " + describe(d));
            });
        if (s.lines[L].cls == LineClass::ugly && on("ugly_reduction"))
            c.check("ugly_reduction", eq(dpart, ugly_expected(s, L)), "dual " + describe(d));
    }

    if (on("closed_form")) {
        auto cf = closed_form_dual(s);
        if (cf) c.check("closed_form", eq(*cf, d), "closed form " + describe(*cf) + ", dual " + describe(d));
    }

    if (on("commutation")) {
        for (int L = 0; L < nlines; ++L) {
            const LineDecl& decl = s.lines[L];
            int top = std::max(e_max(line_project(s, L)).twice, 0) + 2;
            std::vector<std::pair<int, int>> sides =
                decl.cls == LineClass::ugly ? std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}
                                            : std::vector<std::pair<int, int>>{{0, 0}};
            for (int x2 = grid_ceil(-top, integral_line(decl)); x2 <= top; x2 += 2) {
                if (x2 == 0) continue;
                for (auto [sa, sb] : sides)
                    c.guarded("commutation", [&] {
                        HalfInt x = HalfInt::from_twice(x2);
                        DerivativeResult lhs_d = derivative(s, L, x, sa);
                        if (lhs_d.k == 0) return;
                        auto lhs = ad(lhs_d.result);
                        DerivativeResult rhs = derivative(d, L, -x, sb);
                        bool ok = rhs.k == lhs_d.k && eq(lhs, rhs.result);
                        c.check("commutation", ok,
                                "x=" + x.str() + " k=" + std::to_string(lhs_d.k) + "/" + std::to_string(rhs.k) +
                                    ", ad(D(s)) = " + describe(lhs) + ", D(ad(s)) = " + describe(rhs.result));
                    });
            }
        }
    }
}

}  // namespace

Report run_properties(const std::vector<SignedSymMultisegment>& inputs, const RunOptions& opt) {
    std::vector<Suite> suites = opt.suites.empty() ? all_suites() : opt.suites;
    std::set<std::string> want;
    std::vector<std::string> order;
    for (auto& [su, props] : suite_props())
        if (std::find(suites.begin(), suites.end(), su) != suites.end())
            for (auto& p : props) {
                want.insert(p);
                order.push_back(p);
            }
    AdFn ad = opt.ad ? opt.ad : AdFn([](const SignedSymMultisegment& s) { return ad_symm(s); });

    unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min<unsigned>(nt, std::max<std::size_t>(1, inputs.size()));
    std::vector<Tallies> parts(nt);
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < inputs.size(); i += nt) check_one(inputs[i], i, want, ad, parts[w]);
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    Tallies all;
    for (auto& part : parts)
        for (auto& [name, x] : part) {
            Tally& a = all[name];
            a.checked += x.checked;
            a.failed += x.failed;
            if (x.first_index < a.first_index) {
                a.first_index = x.first_index;
                a.example = x.example;
            }
        }
    Report r;
    r.inputs = inputs.size();
    for (auto& name : order) {
        PropertyResult p;
        p.name = name;
        auto it = all.find(name);
        if (it != all.end()) {
            p.checked = it->second.checked;
            p.failed = it->second.failed;
            p.counterexample = it->second.example;
        }
        r.properties.push_back(std::move(p));
    }
    return r;
}

// ---- GL suites ----------------------------------------------------------------------------------

PropertyResult check_mw_involution(int bound, int max_segments) {
    PropertyResult r;
    r.name = "mw_involution";
    std::vector<Segment> segs;
    for (int b = -bound; b <= bound; ++b)
        for (int e = b; e <= bound; ++e) segs.push_back(Segment::make(2 * b, 2 * e, 0));
    Multisegment m;
    multisets(static_cast<int>(segs.size()), max_segments, [&](const std::vector<int>& idx) {
        m.clear();
        for (int i : idx) m.push_back(segs[i]);
        canonicalize(m);
        Multisegment t = mw_transpose(m);
        ++r.checked;
        if (mw_transpose(t) != m || degree(t) != degree(m)) {
            if (!r.failed++) r.counterexample = describe(m, single_line(LineClass::good, Grid::integral));
        }
    });
    return r;
}

PropertyResult check_kz_identity(std::size_t instances, int max_segments, int bound, std::uint64_t seed) {
    PropertyResult r;
    r.name = "kz_identity";
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto t = single_line(LineClass::good, Grid::integral);
    for (std::size_t i = 0; i < instances; ++i) {
        Multisegment m;
        int k = uni(1, max_segments);
        for (int j = 0; j < k; ++j) {
            int b = uni(-bound, bound), e = uni(-bound, bound);
            if (b > e) std::swap(b, e);
            m.push_back(Segment::make(2 * b, 2 * e, 0));
        }
        canonicalize(m);
        Multisegment mt = mw_transpose(m);
        int lo = INT_MAX, hi = INT_MIN;
        for (auto& d : m) {
            lo = std::min(lo, d.b.twice);
            hi = std::max(hi, d.e.twice);
        }
        bool ok = true;
        std::string why;
        for (int b2 = lo; b2 <= hi && ok; b2 += 2)
            for (int e2 = b2; e2 <= hi && ok; e2 += 2) {
                Segment target = Segment::make(b2, e2, 0);
                int want = containing_count(mt, target), got = kz_capacity(m, target);
                if (want != got) {
                    ok = false;
                    why = "target " + target.str() + ": transpose count " + std::to_string(want) + ", capacity " +
                          std::to_string(got);
                }
            }
        ++r.checked;
        if (!ok && !r.failed++) r.counterexample = describe(m, t) + "; " + why;
    }
    return r;
}

PropertyResult check_ugly_reduction(int bound, int max_segments) {
    PropertyResult r;
    r.name = "ugly_reduction";
    SymEnumParams p;
    p.lines = single_line(LineClass::ugly, Grid::integral);
    p.bound2 = 2 * bound;
    p.max_pairs = max_segments;
    p.max_centered = 0;
    enumerate_symmetric(p, [&](const SignedSymMultisegment& s) {
        ++r.checked;
        bool ok = false;
        std::string why;
        try {
            ok = eq(ad_line(s, 0), ugly_expected(s, 0));
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!ok && !r.failed++) r.counterexample = describe(s) + (why.empty() ? "" : "; " + why);
    });
    return r;
}

// ---- dataset statistics --------------------------------------------------------------------------

HalfInt appendix_quantity(const LanglandsData& d) {
    std::optional<int> q;
    for (auto& x : d.n) q = std::min(q.value_or(INT_MAX), x.b.twice);
    for (auto& t : d.phi) q = std::min(q.value_or(INT_MAX), -(t.a - 1));
    return HalfInt::from_twice(q.value_or(0));
}

void appendix_accumulate(AppendixStats& st, const LanglandsData& in, const LanglandsData& dual) {
    ++st.samples;
    if (in.n.empty() && in.phi.empty()) return;
    ++st.emax_checked;
    HalfInt q_in = appendix_quantity(in), q_out = appendix_quantity(dual);
    if (q_in != q_out) ++st.emax_violations;

    // smallest beginning of the dual, counting tempered pieces as [-(a-1)/2, (a-1)/2]
    ++st.first_begin_checked;
    if (q_out == q_in) ++st.first_begin_hits;
    std::optional<int> lit;
    for (auto& x : in.n) lit = std::min(lit.value_or(INT_MAX), x.b.twice);
    for (auto& t : in.phi) lit = std::min(lit.value_or(INT_MAX), -2 * t.a);
    if (lit && *lit == q_out.twice) ++st.first_begin_literal_hits;
}

AppendixStats appendix_stats(const std::vector<LanglandsData>& data, const AdFn& ad) {
    AppendixStats st;
    for (auto& d : data) {
        LanglandsData out = ad ? untransfer(ad(transfer(d))) : ad_data(d);
        appendix_accumulate(st, d, out);
    }
    return st;
}

}  // namespace azd
