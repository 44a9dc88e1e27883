#include "azdual/langdata.hpp"
#include "azdual/verify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace azd;
using azt::seg;
using azt::sym;

namespace {

SignedSymMultisegment raw(LineTable lines, std::vector<SignedSeg> items) {
    SignedSymMultisegment s{std::move(lines), std::move(items)};
    canonicalize(s.items);
    return s;
}

bool has_condition(const ValidationReport& r, const std::string& c) {
    for (auto& v : r)
        if (v.condition == c) return true;
    return false;
}

const LineTable kGood = single_line(LineClass::good, Grid::integral);
const LineTable kBad = single_line(LineClass::bad, Grid::integral);

}  // namespace

TEST_CASE("validate: minimal symmetric pair") {
    CHECK(validate(raw(kGood, {{seg(-1, 0), 1}, {seg(0, 1), 1}})).empty());
}

TEST_CASE("validate: odd centered multiplicity on a bad line") {
    auto r = validate(raw(kBad, {{seg(0, 0), 1}}));
    CHECK(has_condition(r, "even multiplicity"));
    CHECK(validate(raw(kBad, {{seg(0, 0), 1}, {seg(0, 0), 1}})).empty());
}

TEST_CASE("validate: a lone negative segment is not symmetric") {
    CHECK(has_condition(validate(raw(kGood, {{seg(-1, 0), 1}})), "symmetry"));
}

TEST_CASE("validate: sign rules") {
    CHECK(has_condition(validate(raw(kGood, {{seg(0, 0), 1}, {seg(0, 0), -1}})), "equal signs"));
    CHECK(has_condition(validate(raw(kBad, {{seg(0, 0), -1}, {seg(0, 0), -1}})), "trivial sign"));
    CHECK(has_condition(validate(raw(kGood, {{seg(0, 0), 0}})), "sign value"));
    CHECK(has_condition(validate(raw(kGood, {{seg(-1, 0), -1}, {seg(0, 1), 1}})), "non-centered sign"));
}

TEST_CASE("validate: grid and line checks") {
    LineTable half = single_line(LineClass::good, Grid::half_integral);
    CHECK(has_condition(validate(raw(half, {{seg(0, 0), 1}})), "grid"));
    CHECK(has_condition(validate(raw(kGood, {{seg(0, 0, 3), 1}})), "undeclared line"));
    LanglandsData d;
    d.lines = kGood;
    d.n = {seg(-1, 1)};
    CHECK(has_condition(validate(d), "negative center"));
    d.n.clear();
    d.phi = {{0, kSelfDual, 2, 1}};
    CHECK(has_condition(validate(d), "grid"));
    d.phi = {{0, kSelfDual, 3, 0}};
    CHECK(has_condition(validate(d), "eta"));
}

TEST_CASE("transfer of the good-line datum with a three-dimensional piece") {
    auto d = azt::data("m: [-3,-1] + [-2,0] + [-2,-2] + [-1,0]; phi: S3:+");
    auto s = transfer(d);
    auto want = sym("s: [-3,-1] + [1,3] + [-2,0] + [0,2] + [-2,-2] + [2,2] + [-1,0] + [0,1] + [-1,1]:+");
    CHECK(azt::same(s, want));
    CHECK(s.items.size() == 9);
    CHECK(untransfer(s) == d);
}

TEST_CASE("transfer with repeated tempered pieces") {
    auto d = azt::data("m: [-2,-2]; phi: 2*S1:- + S3:+");
    auto want = sym("s: [-2,-2] + 2*[0,0]:- + [-1,1]:+ + [2,2]");
    CHECK(azt::same(transfer(d), want));
    CHECK(sign_product(want, 0) == 1);
}

TEST_CASE("transfer of the empty datum") {
    LanglandsData d;
    CHECK(transfer(d).items.empty());
    CHECK(untransfer(SignedSymMultisegment{}) == d);
}

TEST_CASE("untransfer of a dual with a five-dimensional piece") {
    auto s = sym("s: [-3,1] + [-1,3] + [-2,2]:+ + [-2,0] + [0,2]");
    CHECK(untransfer(s) == azt::data("m: [-3,1] + [-2,0]; phi: S5:+"));
}

TEST_CASE("transfer and untransfer are inverse on enumerated data") {
    EnumParams p;
    p.N = 2;
    p.km = 2;
    p.kphi = 2;
    p.lines = {{"r", LineClass::good, Grid::integral}, {"b", LineClass::bad, Grid::half_integral},
               {"u", LineClass::ugly, Grid::integral}};
    std::size_t n = 0;
    enumerate_data(p, [&](const LanglandsData& d) {
        if (n++ % 7) return;  // a thinned slice keeps this quick
        CHECK(untransfer(transfer(d)) == d);
    });
    CHECK(n > 1000);
}

TEST_CASE("section_s splits centered multiplicities") {
    auto s = sym("s: 3*[0,0]:+ + [-1,1]:-");
    auto y = section_s(s);
    int le = 0, eq = 0, ge = 0, big = 0;
    for (auto& x : y.items) {
        if (x.seg == seg(0, 0)) {
            le += x.label == Label::le0;
            eq += x.label == Label::eq0;
            ge += x.label == Label::ge0;
        } else if (x.seg == seg(-1, 1)) {
            CHECK(x.label == Label::eq0);
            ++big;
        }
    }
    CHECK(le == 1);
    CHECK(eq == 1);
    CHECK(ge == 1);
    CHECK(big == 1);
    CHECK(projection_p(y) == s);
    CHECK(section_s(SignedSymMultisegment{}).items.empty());
}

TEST_CASE("section_s reproduces the labeled form of the large good-line datum") {
    auto s = transfer(azt::data("m: [-3,-3]; phi: 3*S3:+ + 3*S5:- + 2*S7:+"));
    auto y = section_s(s);
    std::vector<std::pair<Segment, Label>> want = {
        {seg(3, 3), Label::ge0},   {seg(-1, 1), Label::ge0}, {seg(-2, 2), Label::ge0}, {seg(-3, 3), Label::ge0},
        {seg(-2, 2), Label::eq0},  {seg(-1, 1), Label::eq0}, {seg(-1, 1), Label::le0}, {seg(-2, 2), Label::le0},
        {seg(-3, -3), Label::le0}, {seg(-3, 3), Label::le0}};
    REQUIRE(y.items.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(y.items[i].seg == want[i].first);
        CHECK(y.items[i].label == want[i].second);
    }
}

TEST_CASE("labeled_cmp examples") {
    LabeledSeg a{seg(-1, 1), Label::le0}, b{seg(-1, 1), Label::eq0};
    CHECK(labeled_cmp(a, b) < 0);
    CHECK(labeled_cmp({seg(0, 2), Label::ge0}, {seg(1, 3), Label::ge0}) < 0);
    CHECK(labeled_cmp({seg(-2, 2), Label::eq0}, {seg(-1, 1), Label::eq0}) > 0);
}

TEST_CASE("labeled_cmp ties only on equal labeled segments") {
    std::vector<LabeledSeg> all;
    for (int b = -3; b <= 3; ++b)
        for (int e = b; e <= 3; ++e) {
            if (b + e < 0) all.push_back({seg(b, e), Label::le0});
            else if (b + e > 0) all.push_back({seg(b, e), Label::ge0});
            else
                for (Label l : {Label::le0, Label::eq0, Label::ge0}) all.push_back({seg(b, e), l});
        }
    for (auto& x : all)
        for (auto& y : all) {
            int c = labeled_cmp(x, y);
            CHECK((c == 0) == (x.seg == y.seg && x.label == y.label));
            CHECK((c < 0) == (labeled_cmp(y, x) > 0));
            for (auto& z : all)
                if (c < 0 && labeled_cmp(y, z) < 0) CHECK(labeled_cmp(x, z) < 0);
        }
}

TEST_CASE("labeled_dual and labeled_iota") {
    CHECK(labeled_dual({seg(-2, 2), Label::le0}).label == Label::ge0);
    auto f = labeled_dual({seg(-1, 1), Label::eq0});
    CHECK(f.seg == seg(-1, 1));
    CHECK(f.label == Label::eq0);
    auto i = labeled_iota({seg(1, 3), Label::ge0});
    CHECK(i.seg == seg(-3, -1));
    CHECK(i.label == Label::le0);
}

TEST_CASE("section lands in iota-symmetric data") {
    for (auto& s : standard_sweep(2, 2, 2)) {
        auto y = section_s(s);
        LabeledSymMultisegment z = y;
        for (auto& x : z.items) x = labeled_iota(x);
        std::sort(z.items.begin(), z.items.end());
        std::sort(y.items.begin(), y.items.end());
        CHECK(z.items == y.items);
        CHECK(projection_p(section_s(s)) == s);
    }
}

TEST_CASE("line_project partitions two-line data") {
    auto s = sym("line r good int; line t bad half; s: [-1,0]@r + [0,1]@r + [0,0]@r:- + [-1/2,-1/2]@t + [1/2,1/2]@t");
    auto a = line_project(s, 0), b = line_project(s, 1);
    CHECK(a.items.size() == 3);
    CHECK(b.items.size() == 2);
    SignedSymMultisegment u = a;
    u.items.insert(u.items.end(), b.items.begin(), b.items.end());
    CHECK(azt::same(u, s));
    CHECK(line_project(s, 7).items.empty());
}

TEST_CASE("line_project commutes with transfer") {
    auto d = azt::data("line r good int; line t bad half; m: [-2,-1]@r + [-3/2,-1/2]@t; phi: S3@r:- + 2*S2@t");
    for (int L = 0; L < 2; ++L) CHECK(azt::same(transfer(line_project(d, L)), line_project(transfer(d), L)));
}

TEST_CASE("sign products") {
    CHECK(sign_product(sym("s: [-2,-2] + [0,0]:- + [-1,1]:+ + [2,2]"), 0) == -1);
    CHECK(sign_product(sym("s: [-1,0] + [0,1]"), 0) == 1);
    CHECK(sign_product(sym("s: [-2,-2] + 2*[0,0]:- + [-1,1]:+ + [2,2]"), 0) == 1);
}

TEST_CASE("plus predicate agrees with sign products") {
    EnumParams p;
    p.N = 2;
    p.km = 1;
    p.kphi = 3;
    p.lines = {{"r", LineClass::good, Grid::integral}, {"h", LineClass::good, Grid::half_integral}};
    enumerate_data(p, [&](const LanglandsData& d) {
        auto s = transfer(d);
        CHECK(is_plus(d) == (sign_product(s) == 1));
        CHECK(sign_product(s) == sign_product(s, 0) * sign_product(s, 1));
    });
}
