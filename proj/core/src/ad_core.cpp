#include "azdual/ad_core.hpp"

#include <algorithm>
#include <map>

#include "azdual/error.hpp"
#include "azdual/mw_gl.hpp"

namespace azd {

namespace {

const LineDecl& decl_of(const SignedSymMultisegment& s, int line) {
    require(line >= 0 && line < static_cast<int>(s.lines.size()), "line index out of range");
    return s.lines[line];
}

std::vector<SignedSeg> line_items(const SignedSymMultisegment& s, int line) {
    std::vector<SignedSeg> v;
    for (auto& x : s.items)
        if (x.seg.line == line) v.push_back(x);
    canonicalize(v);
    return v;
}

LabeledSeg forced(const Segment& d) {
    int c2 = d.b.twice + d.e.twice;
    return {d, c2 < 0 ? Label::le0 : (c2 > 0 ? Label::ge0 : Label::eq0), 1};
}

std::size_t first_index(const Multisegment& m, const Segment& d) {
    auto it = std::find(m.begin(), m.end(), d);
    ensure(it != m.end(), "segment " + d.str() + " missing from enumeration");
    return static_cast<std::size_t>(it - m.begin());
}

SignedSymMultisegment from_counts(const LineTable& lines, const std::map<Segment, int>& cnt) {
    SignedSymMultisegment r;
    r.lines = lines;
    for (auto& [d, c] : cnt) {
        ensure(c >= 0, "negative multiplicity of " + d.str());
        if (d.empty()) continue;
        for (int k = 0; k < c; ++k) r.items.push_back({d, 1});
    }
    canonicalize(r.items);
    return r;
}

// ---- bad and ugly lines ------------------------------------------------------

AdStep plain_step(const SignedSymMultisegment& s, int line, bool ugly) {
    Multisegment m;
    for (auto& x : line_items(s, line)) m.push_back(x.seg);
    require(!m.empty(), "ad_step needs data on the line");

    AdStep r;
    Multisegment chain;
    if (ugly) {
        Multisegment side0;
        for (auto& d : m)
            if (d.side == 0) side0.push_back(d);
        require(!side0.empty(), "ugly data without a rho side");
        chain = mw_step(side0).chain;
    } else {
        int emax = m.front().e.twice;
        for (auto& d : m) emax = std::max(emax, d.e.twice);
        std::size_t k = 0;
        while (m[k].e.twice != emax) ++k;
        chain.push_back(m[k]);
        for (;;) {
            const Segment prev = chain.back();
            bool found = false;
            for (auto& d : m) {
                if (d.e.twice != prev.e.twice - 2 || d.b.twice >= prev.b.twice) continue;
                bool dual_earlier = std::find(chain.begin(), chain.end(), seg_dual(d)) != chain.end();
                if (dual_earlier && multiplicity(m, d) < 2) continue;
                chain.push_back(d);
                found = true;
                break;
            }
            if (!found) break;
        }
    }

    std::map<Segment, int> cnt;
    for (auto& d : m) cnt[d]++;
    for (auto& d : chain) {
        cnt[d]--;
        cnt[seg_trunc(d, Trunc::end)]++;
        cnt[seg_dual(d)]--;
        cnt[seg_trunc(seg_dual(d), Trunc::begin)]++;
        r.seq.segs.push_back(forced(d));
        r.seq.i.push_back(first_index(m, d));
        r.seq.i_dual.push_back(first_index(m, seg_dual(d)));
    }
    r.seq.eps0 = 1;
    r.rest = from_counts(s.lines, cnt);

    Segment top = chain.front();
    top.b = chain.back().e;
    r.m1.lines = s.lines;
    r.m1.items = {{top, 1}, {seg_dual(top), 1}};
    canonicalize(r.m1.items);
    return r;
}

// ---- good lines --------------------------------------------------------------

struct GoodCtx {
    bool same_type;
    int eps_half = 1;  // eps([-1/2,1/2]) when present
};

bool terminal(const GoodCtx& g, const LabeledSeg& x) {
    bool ge_or_eq = x.label == Label::ge0 || x.label == Label::eq0;
    if (g.same_type) return x.seg.b.twice == 0 && x.seg.e.twice == 0 && ge_or_eq;
    if (x.seg.b.twice == 1 && x.seg.e.twice == 1) return true;
    return x.seg.b.twice == -1 && x.seg.e.twice == 1 && ge_or_eq && g.eps_half == -1;
}

bool same_labeled(const LabeledSeg& a, const LabeledSeg& b) { return a.seg == b.seg && a.label == b.label; }

AdStep good_step(const SignedSymMultisegment& s, int line) {
    const LineDecl& ld = decl_of(s, line);
    SignedSymMultisegment part;
    part.lines = s.lines;
    part.items = line_items(s, line);
    require(!part.items.empty(), "ad_step needs data on the line");

    std::map<Segment, int> eps_of;
    int n0 = 0;
    for (auto& x : part.items)
        if (x.seg.centered()) {
            eps_of[x.seg] = x.eps;
            ++n0;
        }
    auto eps_in_m = [&](const Segment& d) {
        auto it = eps_of.find(d);
        return it == eps_of.end() ? 0 : it->second;
    };

    GoodCtx g{ld.same_type()};
    if (int e = eps_in_m(Segment::make(-1, 1, line))) g.eps_half = e;

    const std::vector<LabeledSeg> lam = section_s(part).items;  // descending for labeled_cmp
    int emax = lam.front().seg.e.twice;
    for (auto& x : lam) emax = std::max(emax, x.seg.e.twice);

    AdStep r;
    InitialSequence& q = r.seq;
    std::size_t k = 0;
    while (lam[k].seg.e.twice != emax) ++k;
    q.segs.push_back(lam[k]);
    while (!terminal(g, q.segs.back())) {
        const LabeledSeg prev = q.segs.back();
        bool found = false;
        for (auto& x : lam) {
            if (x.seg.e.twice != prev.seg.e.twice - 2) continue;
            if (labeled_cmp(x, prev) > 0) continue;
            if (x.seg.centered() && prev.seg.centered() && x.eps != -prev.eps) continue;
            q.segs.push_back(x);
            found = true;
            break;
        }
        if (!found) break;
    }
    const LabeledSeg& d1 = q.segs.front();
    const LabeledSeg& dl = q.segs.back();
    q.eps0 = terminal(g, dl) ? -1 : 1;

    if (dl.seg.b.twice == dl.seg.e.twice && (dl.seg.e.twice == 1 || (dl.seg.e.twice == 0 && dl.label == Label::ge0))) {
        for (std::size_t j = 0; j < q.segs.size(); ++j) {
            const Segment& d = q.segs[j].seg;
            int want = emax - 2 * static_cast<int>(j);
            ensure(d.b.twice == want && d.e.twice == want, "staircase shape violated at " + d.str());
        }
    }

    r.m1.lines = s.lines;
    if (q.eps0 == 1) {
        ensure(d1.seg.e.twice + dl.seg.e.twice != 0, "eps0 = +1 with a centered first piece");
        Segment top = Segment::make(dl.seg.e.twice, d1.seg.e.twice, line);
        r.m1.items = {{top, 1}, {seg_dual(top), 1}};
    } else {
        Segment top = Segment::make(-d1.seg.e.twice, d1.seg.e.twice, line);
        int par = (g.same_type ? n0 + 1 : n0) % 2 == 0 ? 1 : -1;
        int sign = par;
        if (g.same_type) {
            int e00 = eps_in_m(Segment::make(0, 0, line));
            ensure(e00 != 0, "terminal chain without [0,0]");
            sign *= e00;
        }
        r.m1.items = {{top, sign}};
    }
    canonicalize(r.m1.items);

    for (auto& d : q.segs) {
        auto find = [&](const LabeledSeg& t) {
            for (std::size_t i = 0; i < lam.size(); ++i)
                if (same_labeled(lam[i], t)) return i;
            ensure(false, "labeled segment " + t.seg.str() + to_string(t.label) + " missing");
            return std::size_t{0};
        };
        q.i.push_back(find(d));
        q.i_dual.push_back(find(labeled_dual(d)));
    }

    std::vector<Segment> sharp(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
        bool in_i = std::find(q.i.begin(), q.i.end(), i) != q.i.end();
        bool in_d = std::find(q.i_dual.begin(), q.i_dual.end(), i) != q.i_dual.end();
        Segment d = lam[i].seg;
        if (in_i && in_d) d = seg_trunc(d, Trunc::both);
        else if (in_i) d = seg_trunc(d, Trunc::end);
        else if (in_d) d = seg_trunc(d, Trunc::begin);
        sharp[i] = d;
    }

    r.rest.lines = s.lines;
    std::map<Segment, int> new_sign;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const Segment& d = sharp[i];
        if (d.empty()) continue;
        int sign = 1;
        if (d.centered()) {
            sign = 0;
            for (std::size_t j = 0; j < q.segs.size() && sign == 0; ++j) {
                if (sharp[q.i[j]] != d) continue;
                const Segment& dj = q.segs[j].seg;
                int c2 = dj.b.twice + dj.e.twice;  // 4c
                if (c2 == 0) sign = q.eps0 * q.segs[j].eps;
                else if (c2 == 2) {
                    int em = eps_in_m(d);
                    sign = em == 0 ? q.eps0 : -q.eps0 * em;
                }
            }
            if (sign == 0) {
                int em = eps_in_m(d);
                ensure(em != 0, "created centered segment " + d.str() + " has no sign source");
                sign = q.eps0 * em;
            }
            auto [it, fresh] = new_sign.emplace(d, sign);
            ensure(fresh || it->second == sign, "equal centered segments " + d.str() + " got different signs");
        }
        r.rest.items.push_back({d, sign});
    }
    canonicalize(r.rest.items);
    return r;
}

}  // namespace

InitialSequence ad_initial_sequence(const SignedSymMultisegment& s, int line) {
    return ad_step(s, line).seq;
}

AdStep ad_step(const SignedSymMultisegment& s, int line) {
    const LineDecl& ld = decl_of(s, line);
    AdStep r;
    switch (ld.cls) {
        case LineClass::good: r = good_step(s, line); break;
        case LineClass::bad: r = plain_step(s, line, false); break;
        case LineClass::ugly: r = plain_step(s, line, true); break;
    }
    int before = 0;
    for (auto& x : s.items)
        if (x.seg.line == line) before += x.seg.length();
    ensure(degree(r.m1) + degree(r.rest) == before, "degree bookkeeping failed");
    return r;
}

SignedSymMultisegment ad_line(const SignedSymMultisegment& s, int line) {
    SignedSymMultisegment out;
    out.lines = s.lines;
    SignedSymMultisegment cur;
    cur.lines = s.lines;
    cur.items = line_items(s, line);
    int deg = degree(cur);
    while (!cur.items.empty()) {
        AdStep st = ad_step(cur, line);
        out.items.insert(out.items.end(), st.m1.items.begin(), st.m1.items.end());
        int d = degree(st.rest);
        ensure(d < deg, "AD step did not decrease the degree");
        deg = d;
        cur = std::move(st.rest);
    }
    canonicalize(out.items);
    return out;
}

SignedSymMultisegment ad_symm(const SignedSymMultisegment& s) {
    require_valid(s);
    SignedSymMultisegment out;
    out.lines = s.lines;
    for (int line = 0; line < static_cast<int>(s.lines.size()); ++line) {
        auto part = ad_line(s, line);
        out.items.insert(out.items.end(), part.items.begin(), part.items.end());
    }
    canonicalize(out.items);
    auto rep = validate(out);
    ensure(rep.empty(), rep.empty() ? "" : "dual left the symmetric space: " + rep.front().condition + " " + rep.front().detail);
    return out;
}

LanglandsData ad_data(const LanglandsData& d) {
    require_valid(d);
    return untransfer(ad_symm(transfer(d)));
}

}  // namespace azd
