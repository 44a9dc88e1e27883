#include <algorithm>
#include <random>

#include "azdual/ad_core.hpp"
#include "azdual/verify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace azd;
using azt::seg;
using azt::sym;

namespace {

const char* kFiveStep = "s: [-3,-1] + [1,3] + [-2,0] + [0,2] + [-2,-2] + [2,2] + [-1,0] + [0,1] + [-1,1]:+";

}  // namespace

TEST_CASE("initial sequence on the good-line datum") {
    auto q = ad_initial_sequence(sym(kFiveStep), 0);
    REQUIRE(q.segs.size() == 5);
    CHECK(q.segs[0].seg == seg(1, 3));
    CHECK(q.segs[1].seg == seg(0, 2));
    CHECK(q.segs[2].seg == seg(-1, 1));
    CHECK(q.segs[2].label == Label::eq0);
    CHECK(q.segs[3].seg == seg(-1, 0));
    CHECK(q.segs[4].seg == seg(-3, -1));
    CHECK(q.eps0 == 1);
    for (std::size_t j = 1; j < q.segs.size(); ++j) CHECK(q.segs[j].seg.e.twice == q.segs[j - 1].seg.e.twice - 2);
}

TEST_CASE("first two steps on the good-line datum") {
    auto st = ad_step(sym(kFiveStep), 0);
    CHECK(azt::same(st.m1, sym("s: [-3,1] + [-1,3]")));
    auto rest = sym("s: 2*[2,2] + [0,1] + [1,1] + [0,0]:+ + [-1,-1] + 2*[-2,-2] + [-1,0]");
    CHECK(azt::same(st.rest, rest));

    auto st2 = ad_step(st.rest, 0);
    CHECK(st2.seq.eps0 == -1);
    CHECK(azt::same(st2.m1, sym("s: [-2,2]:+")));
    CHECK(azt::same(st2.rest, sym("s: [2,2] + [0,1] + [-1,0] + [-2,-2]")));
}

TEST_CASE("bad line: the dual of an earlier segment needs multiplicity two") {
    auto s = sym("line r bad int; s: [-1,0]@r + [0,1]@r");
    auto q = ad_initial_sequence(s, 0);
    REQUIRE(q.segs.size() == 1);
    CHECK(q.segs[0].seg == seg(0, 1));
    auto st = ad_step(s, 0);
    CHECK(azt::same(st.m1, sym("line r bad int; s: [-1,-1]@r + [1,1]@r")));
    CHECK(azt::same(st.rest, sym("line r bad int; s: 2*[0,0]@r")));

    auto s2 = sym("line r bad int; s: 2*[-1,0]@r + 2*[0,1]@r");
    CHECK(ad_initial_sequence(s2, 0).segs.size() == 2);
}

TEST_CASE("ad_symm on small good-line data") {
    CHECK(azt::same(ad_symm(sym("s: [-2,-2] + 2*[0,0]:- + [-1,1]:+ + [2,2]")),
                    sym("s: [-2,0] + [0,2] + [0,0]:+")));
    CHECK(azt::same(ad_symm(sym("s: [-2,-2] + [0,0]:- + [-1,1]:+ + [2,2]")), sym("s: [-2,2]:+ + [0,0]:-")));
    CHECK(azt::same(ad_symm(sym("s: [-1,0] + [0,1]")), sym("s: [-1,0] + [0,1]")));
}

TEST_CASE("bad line with doubled segments is self-dual") {
    auto s = sym("line r bad int; s: 2*[-1,0]@r + 2*[0,1]@r");
    CHECK(azt::same(ad_symm(s), s));
}

TEST_CASE("ad_data on the good-line datum") {
    auto d = azt::data("m: [-3,-1] + [-2,0] + [-2,-2] + [-1,0]; phi: S3:+");
    CHECK(ad_data(d) == azt::data("m: [-3,1] + [-2,0]; phi: S5:+"));
}

TEST_CASE("ad_data on ugly data") {
    auto d = azt::data("line r ugly int; m: [-3,-1]@r + [-2,-1]@r + [-2,0]@r");
    CHECK(ad_data(d) == azt::data("line r ugly int; m: [-3,-2]@r + [-2,-1]@r + [-2,-2]@r + [-1,0]@r + [-1,-1]@r"));
    auto d2 = azt::data("line r ugly int; m: [-2,1]@r");
    CHECK(ad_data(d2) == azt::data("line r ugly int; m: [-2,-2]@r + [-1,-1]@r + [-1,-1]@r~; phi: S1@r + S1@r~"));
}

TEST_CASE("cuspidal data are fixed") {
    for (const char* t : {"m: 0; phi: S1:+", "m: 0; phi: S1:-", "line r bad int; m: 0; phi: 2*S1@r",
                          "line h good half; m: 0; phi: S2@h:-"}) {
        auto d = azt::data(t);
        CHECK(ad_data(d) == d);
    }
}

TEST_CASE("ad_symm rejects invalid input") {
    SignedSymMultisegment s;
    s.lines = single_line(LineClass::good, Grid::integral);
    s.items = {{seg(-1, 0), 1}};
    CHECK_THROWS_AS(ad_symm(s), DomainError);
}

TEST_CASE("multi-line data split into independent lines") {
    auto d = azt::data("line r good int; line t bad half; line u ugly int; "
                       "m: [-2,0]@r + [-3/2,-1/2]@t + [-2,1]@u; phi: S3@r:- + 2*S2@t + S1@u + S1@u~");
    LanglandsData out = ad_data(d);
    for (int L = 0; L < 3; ++L) CHECK(line_project(out, L) == ad_data(line_project(d, L)));
    CHECK(ad_data(out) == d);
}

TEST_CASE("reordering equal entries does not change the dual") {
    std::mt19937 rng(3);
    auto sweep = standard_sweep(4, 3, 3);
    for (std::size_t i = 0; i < sweep.size(); i += 13) {
        auto s = sweep[i];
        auto want = ad_symm(s);
        auto items = s.items;
        std::shuffle(items.begin(), items.end(), rng);
        SignedSymMultisegment t{s.lines, items};
        CHECK(azt::same(ad_symm(t), want));
    }
}

TEST_CASE("steps on the sweep keep the degree bookkeeping and stepwise signs") {
    for (auto& s : standard_sweep(4, 2, 2)) {
        if (s.items.empty()) continue;
        auto st = ad_step(s, 0);
        CHECK(degree(st.m1) + degree(st.rest) == degree(s));
        CHECK(sign_product(st.m1, 0) * sign_product(st.rest, 0) == sign_product(s, 0));
        // a pair of dual segments, or one centered segment
        if (st.m1.items.size() == 1) CHECK(st.m1.items[0].seg.b.twice + st.m1.items[0].seg.e.twice == 0);
        else if (st.m1.items.size() == 2) CHECK(seg_dual(st.m1.items[0].seg) == st.m1.items[1].seg);
        else CHECK(st.m1.items.size() <= 2);
    }
}
