#include "azdual/mw_gl.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

#include "azdual/error.hpp"

namespace azd {

MwStep mw_step(const Multisegment& m_in) {
    require(!m_in.empty(), "mw_step needs a nonempty multisegment");
    Multisegment m = m_in;
    canonicalize(m);
    for (auto& d : m)
        require(d.line == m.front().line && d.side == m.front().side, "mw_step works on a single line");

    int ymax = m.front().e.twice;
    for (auto& d : m) ymax = std::max(ymax, d.e.twice);

    // m is sorted descending, so the first hit of a scan is the largest candidate
    std::vector<size_t> idx;
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i].e.twice == ymax) {
            idx.push_back(i);
            break;
        }
    for (;;) {
        const Segment& prev = m[idx.back()];
        size_t found = m.size();
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i].e.twice == prev.e.twice - 2 && m[i].b.twice < prev.b.twice) {
                found = i;
                break;
            }
        if (found == m.size()) break;
        idx.push_back(found);
    }

    MwStep r;
    for (size_t i : idx) r.chain.push_back(m[i]);
    r.produced = m[idx.front()];
    r.produced.b = m[idx.back()].e;
    r.produced.e = m[idx.front()].e;
    for (size_t i : idx) m[i] = seg_trunc(m[i], Trunc::end);
    canonicalize(m);
    r.rest = std::move(m);
    return r;
}

Multisegment mw_transpose(const Multisegment& m_in) {
    std::map<std::pair<int, int>, Multisegment> parts;
    for (auto& d : m_in)
        if (!d.empty()) parts[{d.line, d.side}].push_back(d);
    Multisegment out;
    for (auto& [key, part] : parts) {
        Multisegment cur = part;
        int deg = degree(cur);
        while (!cur.empty()) {
            auto st = mw_step(cur);
            out.push_back(st.produced);
            ensure(degree(st.rest) < deg, "mw_step did not decrease the degree");
            deg = degree(st.rest);
            cur = std::move(st.rest);
        }
    }
    canonicalize(out);
    return out;
}

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long,
                    boost::property<boost::edge_residual_capacity_t, long,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

// Unit vertex capacities via in/out split nodes.
int column_paths(int nseg, int lo, int hi, const std::function<bool(int, int)>& contains,
                 const std::function<bool(int, int)>& edge) {
    if (hi < lo) return 0;
    FlowGraph g;
    auto cap = boost::get(boost::edge_capacity, g);
    auto rev = boost::get(boost::edge_reverse, g);
    auto add = [&](size_t u, size_t v, long c) {
        auto e1 = boost::add_edge(u, v, g).first;
        auto e2 = boost::add_edge(v, u, g).first;
        cap[e1] = c;
        cap[e2] = 0;
        rev[e1] = e2;
        rev[e2] = e1;
    };
    const size_t src = 0, snk = 1;
    std::map<std::pair<int, int>, size_t> node;  // (segment, column) -> in-node; out-node is +1
    size_t next = 2;
    for (int x = lo; x <= hi; x += 2)
        for (int i = 0; i < nseg; ++i)
            if (contains(i, x)) {
                node[{i, x}] = next;
                add(next, next + 1, 1);
                if (x == lo) add(src, next, 1);
                if (x == hi) add(next + 1, snk, 1);
                next += 2;
            }
    for (auto& [key, u] : node) {
        auto [i, x] = key;
        if (x == hi) continue;
        for (int j = 0; j < nseg; ++j) {
            auto it = node.find({j, x + 2});
            if (it != node.end() && edge(i, j)) add(u + 1, it->second, 1);
        }
    }
    if (boost::num_vertices(g) < 2) return 0;
    return static_cast<int>(boost::edmonds_karp_max_flow(g, src, snk));
}

}  // namespace

int kz_capacity(const Multisegment& m, const Segment& target) {
    if (target.empty()) return 0;
    std::vector<Segment> v;
    for (auto& d : m) {
        require(d.line == target.line && d.side == target.side, "kz_capacity works on a single line");
        v.push_back(d);
    }
    return column_paths(
        static_cast<int>(v.size()), target.b.twice, target.e.twice,
        [&](int i, int x) { return v[i].b.twice <= x && x <= v[i].e.twice; },
        [&](int i, int j) { return seg_precedes(v[i], v[j]); });
}

int kz_capacity_labeled(const std::vector<LabeledSeg>& y, const Segment& target) {
    if (target.empty()) return 0;
    return column_paths(
        static_cast<int>(y.size()), target.b.twice, target.e.twice,
        [&](int i, int x) { return y[i].seg.b.twice <= x && x <= y[i].seg.e.twice; },
        [&](int i, int j) { return labeled_cmp(y[i], y[j]) < 0; });
}

int containing_count(const Multisegment& m, const Segment& target) {
    int c = 0;
    for (auto& d : m)
        if (d.line == target.line && d.side == target.side && d.b <= target.b && target.e <= d.e) ++c;
    return c;
}

}  // namespace azd
