#include <set>

#include "azdual/ad_core.hpp"
#include "azdual/verify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace azd;
using azt::sym;

TEST_CASE("enumeration with N = 0 yields only the empty datum") {
    EnumParams p;
    p.N = 0;
    p.km = 3;
    p.kphi = 0;
    auto all = enumerate_data(p);
    REQUIRE(all.size() == 1);
    CHECK(all[0].n.empty());
    CHECK(all[0].phi.empty());
}

TEST_CASE("enumeration count against a direct loop") {
    EnumParams p;
    p.N = 1;
    p.km = 1;
    p.kphi = 1;
    // at most one segment [b,e] with b >= -1 and b + e < 0, at most one S_a with a odd, a <= 3, signed
    int segs = 0;
    for (int b = -1; b <= 1; ++b)
        for (int e = b; e <= 1; ++e)
            if (b + e < 0) ++segs;
    int comps = 0;
    for (int a = 1; a <= 3; a += 2) comps += 2;
    auto all = enumerate_data(p);
    CHECK(all.size() == static_cast<std::size_t>((1 + segs) * (1 + comps)));
    std::set<std::string> distinct;
    for (auto& d : all) {
        CHECK(validate(d).empty());
        distinct.insert(cli::render_dsl(d));
    }
    CHECK(distinct.size() == all.size());
}

TEST_CASE("sampled enumeration is determined by the seed") {
    EnumParams p;
    p.N = 3;
    p.km = 3;
    p.kphi = 2;
    p.sampled = true;
    p.count = 50;
    p.seed = 5;
    auto a = enumerate_data(p), b = enumerate_data(p);
    CHECK(a == b);
    CHECK(a.size() == 50);
    p.seed = 6;
    CHECK(enumerate_data(p) != a);
}

TEST_CASE("closed forms on small families") {
    auto bad = sym("line r bad int; s: [-1,0]@r + [0,1]@r");
    auto want = sym("line r bad int; s: [-1,-1]@r + [1,1]@r + 2*[0,0]@r");
    auto got = closed_form_dual(bad);
    REQUIRE(got.has_value());
    CHECK(azt::same(*got, want));

    auto doubled = sym("line r bad int; s: 2*[-1,0]@r + 2*[0,1]@r");
    REQUIRE(closed_form_dual(doubled).has_value());
    CHECK(azt::same(*closed_form_dual(doubled), doubled));

    auto good = sym("s: [-1,0] + [0,1]");
    REQUIRE(closed_form_dual(good).has_value());
    CHECK(azt::same(*closed_form_dual(good), good));

    CHECK_FALSE(closed_form_dual(sym("s: [-3,-1] + [1,3]")).has_value());
}

TEST_CASE("every family has fixtures that match it") {
    for (Family f : all_families()) {
        auto cases = family_fixtures(f, 3);
        CHECK(!cases.empty());
        for (auto& c : cases) {
            auto m = match_family(c.input);
            REQUIRE(m.has_value());
            CHECK(closed_form_dual(c.input).has_value());
        }
    }
}

TEST_CASE("inverse derivative search") {
    auto hit = inverse_derivative_search(sym("s: [-1,1]:+"), 0, HalfInt::of(-2), 1, 2);
    REQUIRE(hit.has_value());
    CHECK(azt::same(*hit, sym("s: [-2,-2] + [2,2] + [-1,1]:+")));

    auto same = inverse_derivative_search(sym("s: [-1,1]:+"), 0, HalfInt::of(1), 0, 2);
    REQUIRE(same.has_value());
    CHECK(azt::same(*same, sym("s: [-1,1]:+")));

    // x = 3 lies outside the coefficient bound, so nothing can be added back
    CHECK_FALSE(inverse_derivative_search(sym("s: [-1,1]:+"), 0, HalfInt::of(3), 1, 2).has_value());
}

TEST_CASE("property suites pass on a small sweep") {
    auto inputs = standard_sweep(2, 2, 2);
    RunOptions o;
    o.threads = 1;
    auto r = run_properties(inputs, o);
    CHECK(r.inputs == inputs.size());
    for (auto& p : r.properties) {
        INFO(p.name << ": " << p.counterexample);
        CHECK(p.failed == 0);
        if (p.name != "ugly_reduction") CHECK(p.checked > 0);  // the sweep has no ugly lines
    }
    CHECK(r.all_pass());
    CHECK(r.find("involution") != nullptr);
}

TEST_CASE("property suites report an injected fault") {
    auto inputs = standard_sweep(2, 2, 2);
    RunOptions o;
    o.threads = 1;
    o.suites = {Suite::involution};
    o.ad = [](const SignedSymMultisegment& s) {
        auto d = ad_symm(s);
        for (auto& x : d.items)
            if (x.eps != 0) {
                x.eps = -x.eps;
                break;
            }
        return d;
    };
    auto r = run_properties(inputs, o);
    CHECK_FALSE(r.all_pass());
    auto* p = r.find("involution");
    REQUIRE(p != nullptr);
    CHECK(p->failed > 0);
    CHECK_FALSE(p->counterexample.empty());
}

TEST_CASE("a throwing dual counts as a failure") {
    RunOptions o;
    o.threads = 1;
    o.suites = {Suite::involution};
    o.ad = [](const SignedSymMultisegment&) -> SignedSymMultisegment { throw DomainError("boom"); };
    auto r = run_properties({sym("s: [0,0]:+")}, o);
    CHECK_FALSE(r.all_pass());
}

TEST_CASE("appendix quantity") {
    CHECK(appendix_quantity(LanglandsData{}) == HalfInt::of(0));
    CHECK(appendix_quantity(azt::data("m: [-3,-1]; phi: S3:+")) == HalfInt::of(-3));
    CHECK(appendix_quantity(azt::data("m: 0; phi: S7:+")) == HalfInt::of(-3));
}

TEST_CASE("ugly reduction and GL checks on small bounds") {
    CHECK(check_ugly_reduction(2, 3).failed == 0);
    auto mw = check_mw_involution(2, 4);
    CHECK(mw.failed == 0);
    CHECK(mw.checked > 100);
}
