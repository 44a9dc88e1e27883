#include "azdual/langdata.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "azdual/error.hpp"

namespace azd {

const char* to_string(LineClass c) {
    switch (c) {
        case LineClass::good: return "good";
        case LineClass::bad: return "bad";
        case LineClass::ugly: return "ugly";
    }
    return "?";
}

const char* to_string(Grid g) { return g == Grid::integral ? "integral" : "half-integral"; }

const char* to_string(Label l) {
    switch (l) {
        case Label::le0: return "<=0";
        case Label::eq0: return "=0";
        case Label::ge0: return ">=0";
    }
    return "?";
}

bool canon_before(const Segment& a, const Segment& b) {
    if (a.line != b.line) return a.line < b.line;
    if (a.side != b.side) return a.side < b.side;
    // descending in seg_lt
    return seg_lt_raw(b.b.twice, b.e.twice, a.b.twice, a.e.twice);
}

void canonicalize(Multisegment& m) {
    std::erase_if(m, [](const Segment& d) { return d.empty(); });
    std::sort(m.begin(), m.end(), canon_before);
}

int multiplicity(const Multisegment& m, const Segment& d) {
    return static_cast<int>(std::count(m.begin(), m.end(), d));
}

int degree(const Multisegment& m) {
    int s = 0;
    for (auto& d : m) s += d.length();
    return s;
}

void canonicalize(std::vector<SignedSeg>& items) {
    std::erase_if(items, [](const SignedSeg& x) { return x.seg.empty(); });
    std::sort(items.begin(), items.end(), [](const SignedSeg& a, const SignedSeg& b) {
        if (a.seg != b.seg) return canon_before(a.seg, b.seg);
        return a.eps < b.eps;
    });
}

Multisegment underlying(const SignedSymMultisegment& s) {
    Multisegment m;
    m.reserve(s.items.size());
    for (auto& x : s.items) m.push_back(x.seg);
    return m;
}

int degree(const SignedSymMultisegment& s) {
    int t = 0;
    for (auto& x : s.items) t += x.seg.length();
    return t;
}

void canonicalize(LanglandsData& d) {
    canonicalize(d.n);
    std::sort(d.phi.begin(), d.phi.end(), [](const TemperedComponent& a, const TemperedComponent& b) {
        return std::tie(a.line, a.side, a.a, a.eta) < std::tie(b.line, b.side, b.a, b.eta);
    });
}

// ---- validation ----------------------------------------------------------

namespace {

std::string where(const LineTable& lines, const Segment& d) {
    std::string s = d.str();
    if (d.line >= 0 && d.line < static_cast<int>(lines.size())) s += "@" + lines[d.line].id;
    if (d.side == 1) s += "~";
    return s;
}

bool check_segment(const LineTable& lines, const Segment& d, ValidationReport& r) {
    if (d.line < 0 || d.line >= static_cast<int>(lines.size())) {
        r.push_back({"undeclared line", d.str()});
        return false;
    }
    const auto& L = lines[d.line];
    bool ok = true;
    if (L.cls == LineClass::ugly ? (d.side != 0 && d.side != 1) : d.side != kSelfDual) {
        r.push_back({"side", where(lines, d) + " has a side inconsistent with its line class"});
        ok = false;
    }
    if (!L.on_grid(d.b) || !L.on_grid(d.e)) {
        r.push_back({"grid", where(lines, d) + " is off the " + to_string(L.grid) + " grid"});
        ok = false;
    }
    if (d.empty()) {
        r.push_back({"empty segment", where(lines, d)});
        ok = false;
    }
    return ok;
}

void check_lines(const LineTable& lines, ValidationReport& r) {
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].cls == LineClass::ugly && lines[i].grid != Grid::integral)
            r.push_back({"ugly grid", "ugly line " + lines[i].id + " must use the integral grid"});
        for (size_t j = 0; j < i; ++j)
            if (lines[j].id == lines[i].id) r.push_back({"duplicate line", lines[i].id});
    }
}

}  // namespace

ValidationReport validate(const SignedSymMultisegment& s) {
    ValidationReport r;
    check_lines(s.lines, r);
    std::map<Segment, int> count;
    std::map<Segment, int> sign;
    for (auto& x : s.items) {
        if (!check_segment(s.lines, x.seg, r)) continue;
        const auto& L = s.lines[x.seg.line];
        count[x.seg]++;
        if (x.eps != 1 && x.eps != -1) {
            r.push_back({"sign value", where(s.lines, x.seg) + " carries sign " + std::to_string(x.eps)});
            continue;
        }
        bool centered = x.seg.centered();
        if (!centered && x.eps != 1)
            r.push_back({"non-centered sign", where(s.lines, x.seg) + " is not centered but has sign -1"});
        if (centered) {
            if (L.cls != LineClass::good && x.eps != 1)
                r.push_back({"trivial sign", where(s.lines, x.seg) + " lies on a " +
                                                 std::string(to_string(L.cls)) + " line and must have sign +1"});
            auto [it, fresh] = sign.emplace(x.seg, x.eps);
            if (!fresh && it->second != x.eps)
                r.push_back({"equal signs", "copies of " + where(s.lines, x.seg) + " carry different signs"});
        }
    }
    for (auto& [d, c] : count) {
        Segment dv = seg_dual(d);
        auto it = count.find(dv);
        int cd = it == count.end() ? 0 : it->second;
        if (cd != c)
            r.push_back({"symmetry", where(s.lines, d) + " appears " + std::to_string(c) + " times but its dual " +
                                         where(s.lines, dv) + " appears " + std::to_string(cd) + " times"});
        if (d.centered() && s.lines[d.line].cls == LineClass::bad && c % 2 != 0)
            r.push_back({"even multiplicity", "centered " + where(s.lines, d) + " on a bad line has odd multiplicity " +
                                                  std::to_string(c)});
    }
    return r;
}

ValidationReport validate(const LanglandsData& d) {
    ValidationReport r;
    check_lines(d.lines, r);
    for (auto& seg : d.n) {
        if (!check_segment(d.lines, seg, r)) continue;
        if (seg.center().twice >= 0)
            r.push_back({"negative center", where(d.lines, seg) + " does not have a strictly negative center"});
    }
    std::map<std::tuple<int, int, int>, std::pair<int, int>> comp;  // (line, side, a) -> (count, eta)
    for (auto& t : d.phi) {
        if (t.line < 0 || t.line >= static_cast<int>(d.lines.size())) {
            r.push_back({"undeclared line", "tempered component S_" + std::to_string(t.a)});
            continue;
        }
        const auto& L = d.lines[t.line];
        std::string name = "S_" + std::to_string(t.a) + "@" + L.id + (t.side == 1 ? "~" : "");
        if (t.a < 1) {
            r.push_back({"dimension", name + " must have a >= 1"});
            continue;
        }
        if (L.cls == LineClass::ugly ? (t.side != 0 && t.side != 1) : t.side != kSelfDual)
            r.push_back({"side", name + " has a side inconsistent with its line class"});
        if (!L.on_grid(HalfInt::from_twice(t.a - 1)))
            r.push_back({"grid", name + " does not give a centered segment on the " + to_string(L.grid) + " grid"});
        if (L.cls == LineClass::good) {
            if (t.eta != 1 && t.eta != -1) r.push_back({"eta", name + " on a good line needs a sign +1 or -1"});
        } else if (t.eta != 0) {
            r.push_back({"eta", name + " lies on a " + std::string(to_string(L.cls)) + " line and must not carry a sign"});
        }
        auto [it, fresh] = comp.emplace(std::make_tuple(t.line, t.side, t.a), std::make_pair(0, t.eta));
        it->second.first++;
        if (!fresh && it->second.second != t.eta) r.push_back({"equal signs", "copies of " + name + " carry different signs"});
    }
    for (auto& [key, v] : comp) {
        auto [line, side, a] = key;
        if (line >= static_cast<int>(d.lines.size())) continue;
        const auto& L = d.lines[line];
        if (L.cls == LineClass::bad && v.first % 2 != 0)
            r.push_back({"even multiplicity", "S_" + std::to_string(a) + "@" + L.id +
                                                  " on a bad line must occur with even multiplicity"});
        if (L.cls == LineClass::ugly && side == 0) {
            auto it = comp.find(std::make_tuple(line, 1, a));
            int other = it == comp.end() ? 0 : it->second.first;
            if (other != v.first)
                r.push_back({"ugly pairing", "S_" + std::to_string(a) + "@" + L.id +
                                                 " must occur equally often on both sides of the ugly pair"});
        }
        if (L.cls == LineClass::ugly && side == 1 && !comp.count(std::make_tuple(line, 0, a)))
            r.push_back({"ugly pairing", "S_" + std::to_string(a) + "@" + L.id +
                                             "~ must occur equally often on both sides of the ugly pair"});
    }
    return r;
}

void require_valid(const SignedSymMultisegment& s) {
    auto r = validate(s);
    if (!r.empty()) throw DomainError(r.front().condition + ": " + r.front().detail);
}

void require_valid(const LanglandsData& d) {
    auto r = validate(d);
    if (!r.empty()) throw DomainError(r.front().condition + ": " + r.front().detail);
}

// ---- transfer ------------------------------------------------------------

SignedSymMultisegment transfer(const LanglandsData& d) {
    require_valid(d);
    SignedSymMultisegment s;
    s.lines = d.lines;
    for (auto& seg : d.n) {
        s.items.push_back({seg, 1});
        s.items.push_back({seg_dual(seg), 1});
    }
    for (auto& t : d.phi) {
        Segment c = Segment::make(-(t.a - 1), t.a - 1, t.line, t.side);
        s.items.push_back({c, d.lines[t.line].cls == LineClass::good ? t.eta : 1});
    }
    canonicalize(s.items);
    return s;
}

LanglandsData untransfer(const SignedSymMultisegment& s) {
    require_valid(s);
    LanglandsData d;
    d.lines = s.lines;
    for (auto& x : s.items) {
        int c2 = x.seg.b.twice + x.seg.e.twice;
        if (c2 < 0) {
            d.n.push_back(x.seg);
        } else if (c2 == 0) {
            bool good = s.lines[x.seg.line].cls == LineClass::good;
            d.phi.push_back({x.seg.line, x.seg.side, x.seg.length(), good ? x.eps : 0});
        }
    }
    canonicalize(d);
    return d;
}

// ---- labeled segments ------------------------------------------------------

static int label_of_center(const Segment& d, Label given) {
    int c2 = d.b.twice + d.e.twice;
    if (c2 < 0) return static_cast<int>(Label::le0);
    if (c2 > 0) return static_cast<int>(Label::ge0);
    return static_cast<int>(given);
}

int labeled_cmp(const LabeledSeg& x, const LabeledSeg& y) {
    if (x.seg.line != y.seg.line || x.seg.side != y.seg.side)
        throw DomainError("labeled segments on different lines are incomparable");
    int cx = label_of_center(x.seg, x.label), cy = label_of_center(y.seg, y.label);
    if (cx != cy) return cx < cy ? -1 : 1;
    if (cx == static_cast<int>(Label::eq0)) {
        if (x.seg.e != y.seg.e) return x.seg.e < y.seg.e ? -1 : 1;
        return 0;
    }
    if (x.seg == y.seg) return 0;
    return seg_lt_raw(x.seg.b.twice, x.seg.e.twice, y.seg.b.twice, y.seg.e.twice) ? -1 : 1;
}

LabeledSeg labeled_dual(const LabeledSeg& x) {
    LabeledSeg r = x;
    r.seg = seg_dual(x.seg);
    int c2 = x.seg.b.twice + x.seg.e.twice;
    if (c2 > 0) r.label = Label::le0;
    else if (c2 < 0) r.label = Label::ge0;
    else if (x.label == Label::le0) r.label = Label::ge0;
    // centered =0 and >=0 keep their label
    return r;
}

LabeledSeg labeled_iota(const LabeledSeg& x) {
    LabeledSeg r = x;
    r.seg = seg_dual(x.seg);
    if (x.label == Label::le0) r.label = Label::ge0;
    else if (x.label == Label::ge0) r.label = Label::le0;
    return r;
}

static void sort_labeled(std::vector<LabeledSeg>& v) {
    std::sort(v.begin(), v.end(), [](const LabeledSeg& a, const LabeledSeg& b) {
        if (a.seg.line != b.seg.line) return a.seg.line < b.seg.line;
        if (a.seg.side != b.seg.side) return a.seg.side < b.seg.side;
        int c = labeled_cmp(a, b);
        if (c != 0) return c > 0;
        return a.eps < b.eps;
    });
}

LabeledSymMultisegment section_s(const SignedSymMultisegment& s) {
    LabeledSymMultisegment y;
    y.lines = s.lines;
    std::map<SignedSeg, int> centered;
    for (auto& x : s.items) {
        int c2 = x.seg.b.twice + x.seg.e.twice;
        if (c2 == 0 && x.seg.side == kSelfDual) {
            centered[x]++;
        } else {
            Label l = c2 < 0 ? Label::le0 : (c2 > 0 ? Label::ge0 : Label::eq0);
            y.items.push_back({x.seg, l, x.eps});
        }
    }
    for (auto& [x, m] : centered) {
        for (int i = 0; i < m / 2; ++i) {
            y.items.push_back({x.seg, Label::le0, x.eps});
            y.items.push_back({x.seg, Label::ge0, x.eps});
        }
        if (m % 2) y.items.push_back({x.seg, Label::eq0, x.eps});
    }
    sort_labeled(y.items);
    return y;
}

SignedSymMultisegment projection_p(const LabeledSymMultisegment& y) {
    SignedSymMultisegment s;
    s.lines = y.lines;
    for (auto& x : y.items) s.items.push_back({x.seg, x.eps});
    canonicalize(s.items);
    return s;
}

// ---- projections -------------------------------------------------------------

int find_line(const LineTable& lines, const std::string& id) {
    for (size_t i = 0; i < lines.size(); ++i)
        if (lines[i].id == id) return static_cast<int>(i);
    return -1;
}

SignedSymMultisegment line_project(const SignedSymMultisegment& s, int line) {
    SignedSymMultisegment r;
    r.lines = s.lines;
    for (auto& x : s.items)
        if (x.seg.line == line) r.items.push_back(x);
    return r;
}

LanglandsData line_project(const LanglandsData& d, int line) {
    LanglandsData r;
    r.lines = d.lines;
    for (auto& x : d.n)
        if (x.line == line) r.n.push_back(x);
    for (auto& t : d.phi)
        if (t.line == line) r.phi.push_back(t);
    return r;
}

int sign_product(const SignedSymMultisegment& s, int line) {
    int p = 1;
    for (auto& x : s.items)
        if (x.seg.line == line && x.seg.centered()) p *= x.eps;
    return p;
}

int sign_product(const SignedSymMultisegment& s) {
    int p = 1;
    for (auto& x : s.items)
        if (x.seg.centered() && x.seg.line >= 0 && x.seg.line < static_cast<int>(s.lines.size()) &&
            s.lines[x.seg.line].cls == LineClass::good)
            p *= x.eps;
    return p;
}

bool is_plus(const LanglandsData& d) {
    int p = 1;
    for (auto& t : d.phi)
        if (t.line >= 0 && t.line < static_cast<int>(d.lines.size()) && d.lines[t.line].cls == LineClass::good)
            p *= t.eta;
    return p == 1;
}

}  // namespace azd

// ---- text forms ----------------------------------------------------------------

namespace azd {

namespace {

std::string seg_text(const LineTable& lines, const Segment& d) {
    std::string t = d.str() + "@";
    t += d.line >= 0 && d.line < static_cast<int>(lines.size()) ? lines[d.line].id : "?" + std::to_string(d.line);
    if (d.side == 1) t += "~";
    return t;
}

std::string join_runs(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if (!out.empty()) out += " + ";
        if (j - i > 1) out += std::to_string(j - i) + "*";
        out += terms[i];
        i = j;
    }
    return out;
}

}  // namespace

std::string describe(const SignedSymMultisegment& s) {
    auto items = s.items;
    canonicalize(items);
    std::vector<std::string> terms;
    for (auto& x : items) {
        std::string t = seg_text(s.lines, x.seg);
        if (x.seg.centered() && x.seg.side == kSelfDual) t += x.eps > 0 ? ":+" : ":-";
        terms.push_back(std::move(t));
    }
    return join_runs(terms);
}

std::string describe(const Multisegment& m_in, const LineTable& lines) {
    Multisegment m = m_in;
    canonicalize(m);
    std::vector<std::string> terms;
    for (auto& d : m) terms.push_back(seg_text(lines, d));
    return join_runs(terms);
}

std::string describe(const LanglandsData& d_in) {
    LanglandsData d = d_in;
    canonicalize(d);
    std::vector<std::string> terms;
    for (auto& t : d.phi) {
        std::string x = "S" + std::to_string(t.a) + "@" +
                        (t.line >= 0 && t.line < static_cast<int>(d.lines.size()) ? d.lines[t.line].id : "?");
        if (t.side == 1) x += "~";
        if (t.eta != 0) x += t.eta > 0 ? ":+" : ":-";
        terms.push_back(std::move(x));
    }
    return "m: " + describe(d.n, d.lines) + "; phi: " + join_runs(terms);
}

HalfInt e_max(const SignedSymMultisegment& s) {
    if (s.items.empty()) return HalfInt{};
    int m = s.items.front().seg.e.twice;
    for (auto& x : s.items) m = std::max(m, x.seg.e.twice);
    return HalfInt::from_twice(m);
}

HalfInt e_max(const SignedSymMultisegment& s, int line) { return e_max(line_project(s, line)); }

}  // namespace azd
