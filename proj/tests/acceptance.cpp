// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "azdual/ad_core.hpp"
#include "azdual/cli/app.hpp"
#include "azdual/cli/io.hpp"
#include "azdual/mw_gl.hpp"
#include "azdual/verify.hpp"
#include "json.hpp"

using namespace azd;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int n, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", n, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string failed_props(const Report& r) {
    std::ostringstream o;
    for (auto& p : r.properties) {
        o << p.name << " " << p.checked - p.failed << "/" << p.checked;
        if (p.failed) o << " [first: " << p.counterexample << "]";
        o << "; ";
    }
    return o.str();
}

bool same(SignedSymMultisegment a, SignedSymMultisegment b) {
    canonicalize(a.items);
    canonicalize(b.items);
    return a.lines == b.lines && a.items == b.items;
}

// ---- 1 ----

struct Golden {
    const char* input;
    const char* dual;
};

const Golden kGolden[] = {
    {"m: [-3,-1]+[-2,0]+[-2,-2]+[-1,0]; phi: S3:+", "m: [-3,1]+[-2,0]; phi: S5:+"},
    {"line r ugly int; m: [-3,-1]@r+[-2,-1]@r+[-2,0]@r",
     "line r ugly int; m: [-3,-2]@r+[-2,-1]@r+[-2,-2]@r+[-1,0]@r+[-1,-1]@r"},
    {"line r ugly int; m: [-2,1]@r", "line r ugly int; m: [-2,-2]@r+[-1,-1]@r+[-1,-1]@r~; phi: S1@r+S1@r~"},
    {"line r bad int; m: [-1,0]@r", "line r bad int; m: [-1,-1]@r; phi: 2*S1@r"},
    {"line r bad int; m: 2*[-1,0]@r", "line r bad int; m: 2*[-1,0]@r"},
    {"m: [-1,0]", "m: [-1,0]"},
    {"m: [-2,-2]; phi: 2*S1:- + S3:+", "m: [-2,0]; phi: S1:+"},
    {"s: [-2,-2]+[0,0]:-+[-1,1]:++[2,2]", "s: [-2,2]:+ + [0,0]:-"},
    {"m: [-3,-3]; phi: 3*S3:+ + 3*S5:- + 2*S7:+",
     "m: [-3,-1]+[-3,-2]+[-3,-3]+2*[-2,-2]+5*[-1,-1]; phi: 6*S1:- + S3:+ + S5:-"},
};

void golden() {
    auto t0 = Clock::now();
    int ok = 0;
    std::string bad;
    for (auto& g : kGolden) {
        auto in = cli::parse_input(g.input);
        bool hit;
        if (in.kind == cli::Kind::symmetric)
            hit = same(ad_symm(in.sym), cli::parse_symmetric(g.dual));
        else
            hit = ad_data(in.data) == cli::parse_data(g.dual);
        if (hit) ++ok;
        else bad += std::string(" mismatch on ") + g.input;
    }
    double s = since(t0);
    report(1, "golden vectors", ok == 9 && s < 1.0,
           std::to_string(ok) + "/9 exact, " + std::to_string(s) + " s" + bad);
}

// ---- 2..5 ----

void sweep_criteria(const std::vector<SignedSymMultisegment>& sweep) {
    auto run = [&](std::vector<Suite> suites) {
        RunOptions o;
        o.suites = std::move(suites);
        return run_properties(sweep, o);
    };

    auto t0 = Clock::now();
    auto inv = run({Suite::involution});
    report(2, "involution", inv.all_pass(),
           std::to_string(sweep.size()) + " inputs, " + failed_props(inv) + std::to_string(since(t0)) + " s");

    t0 = Clock::now();
    auto invar = run({Suite::invariants});
    report(3, "invariants", invar.all_pass() && invar.properties.size() >= 5,
           failed_props(invar) + std::to_string(since(t0)) + " s");

    t0 = Clock::now();
    auto com = run({Suite::commutation});
    report(4, "derivative commutation", com.all_pass(), failed_props(com) + std::to_string(since(t0)) + " s");

    t0 = Clock::now();
    std::size_t cases = 0, mismatches = 0;
    std::string first;
    for (Family f : all_families()) {
        for (auto& c : family_fixtures(f, 6)) {
            ++cases;
            auto want = closed_form_dual(c.input);
            if (!want || !same(ad_symm(c.input), *want)) {
                if (first.empty()) first = std::string(to_string(f)) + " " + c.params;
                ++mismatches;
            }
        }
    }
    auto cf = run({Suite::closed_form});
    report(5, "closed forms", mismatches == 0 && cf.all_pass() && cases > 0,
           std::to_string(cases) + " fixtures over 8 families, " + std::to_string(mismatches) + " mismatches" +
               (first.empty() ? "" : " [first: " + first + "]") + "; sweep " + failed_props(cf) +
               std::to_string(since(t0)) + " s");
}

// ---- 6 ----

void mw_suite() {
    auto t0 = Clock::now();
    auto inv = check_mw_involution(3, 6);
    auto kz = check_kz_identity(1000, 8, 5, 1);
    // labeled graph on the large good-line datum: capacity 2 through [1,3]
    auto s = transfer(cli::parse_data("m: [-3,-3]; phi: 3*S3:+ + 3*S5:- + 2*S7:+"));
    int cap = kz_capacity_labeled(section_s(s).items, Segment::make(2, 6, 0));
    int mult = multiplicity(underlying(ad_symm(s)), Segment::make(-6, -2, 0));
    bool ok = inv.failed == 0 && kz.failed == 0 && kz.checked >= 1000 && cap == 2 && mult == 1;
    std::ostringstream o;
    o << "transpose involution " << inv.checked - inv.failed << "/" << inv.checked << ", capacity identity "
      << kz.checked - kz.failed << "/" << kz.checked << ", labeled capacity " << cap << ", multiplicity " << mult
      << ", " << since(t0) << " s";
    if (inv.failed) o << " [first: " << inv.counterexample << "]";
    if (kz.failed) o << " [first: " << kz.counterexample << "]";
    report(6, "MW suite", ok, o.str());
}

// ---- 7 ----

void ugly() {
    auto t0 = Clock::now();
    auto r = check_ugly_reduction(3, 4);
    report(7, "ugly reduction", r.failed == 0 && r.checked > 0,
           std::to_string(r.checked - r.failed) + "/" + std::to_string(r.checked) + ", " +
               std::to_string(since(t0)) + " s" + (r.failed ? " [first: " + r.counterexample + "]" : ""));
}

// ---- 8 ----

void dataset() {
    auto t0 = Clock::now();
    std::ostringstream out, err;
    int code = cli::run({"dataset", "--N", "5", "--km", "5", "--kphi", "3", "--count", "100000", "--seed", "1"}, out, err);
    double s = since(t0);
    try {
        auto j = nlohmann::json::parse(out.str());
        auto samples = j.at("samples").get<std::size_t>();
        auto checked = j.at("e_max_preservation").at("checked").get<std::size_t>();
        auto viol = j.at("e_max_preservation").at("violations").get<std::size_t>();
        auto& fb = j.at("first_beginning");
        std::ostringstream o;
        o << samples << " samples, e_max checked " << checked << ", violations " << viol << ", " << s
          << " s; first-beginning rate " << fb.at("rate").get<double>() << " (informational)";
        report(8, "dataset reproduction", code == cli::kOk && samples == 100000 && viol == 0 && s < 300.0, o.str());
    } catch (const std::exception& e) {
        report(8, "dataset reproduction", false, std::string("bad report: ") + e.what() + " " + err.str());
    }
}

// ---- 9 ----

using Corruption = std::function<bool(SignedSymMultisegment&)>;

std::size_t centered(const SignedSymMultisegment& s) {
    for (std::size_t i = 0; i < s.items.size(); ++i)
        if (s.items[i].seg.b.twice + s.items[i].seg.e.twice == 0) return i;
    return s.items.size();
}

std::size_t noncentered(const SignedSymMultisegment& s) {
    for (std::size_t i = 0; i < s.items.size(); ++i)
        if (s.items[i].seg.b.twice + s.items[i].seg.e.twice != 0) return i;
    return s.items.size();
}

Segment stretch(const Segment& d, int db2, int de2) {
    return Segment::make(d.b.twice + db2, d.e.twice + de2, d.line, d.side);
}

struct Fault {
    std::string name;
    Corruption corrupt;
    // Flipping every copy of an even-multiplicity centered segment commutes with
    // the dual on some inputs, so per-input detection is reported, not required.
    bool every_input = true;
};

const std::vector<Fault> kFaults = {
    {"one sign",
     [](SignedSymMultisegment& s) {
         auto i = centered(s);
         if (i == s.items.size()) return false;
         s.items[i].eps = -s.items[i].eps;
         return true;
     }},
    {"all copies of one centered sign",
     [](SignedSymMultisegment& s) {
         auto i = centered(s);
         if (i == s.items.size()) return false;
         Segment d = s.items[i].seg;
         for (auto& x : s.items)
             if (x.seg == d) x.eps = -x.eps;
         return true;
     },
     false},
    {"one coefficient",
     [](SignedSymMultisegment& s) {
         if (s.items.empty()) return false;
         s.items[0].seg = stretch(s.items[0].seg, 0, 2);
         return true;
     }},
    {"segment and its dual",
     [](SignedSymMultisegment& s) {
         auto i = noncentered(s);
         if (i == s.items.size()) return false;
         Segment d = s.items[i].seg, dd = seg_dual(d);
         bool done_d = false, done_dd = false;
         for (auto& x : s.items) {
             if (!done_d && x.seg == d) { x.seg = stretch(d, -2, 0); done_d = true; }
             else if (!done_dd && x.seg == dd) { x.seg = stretch(dd, 0, 2); done_dd = true; }
         }
         return done_d && done_dd;
     }},
};

void faults(const std::vector<SignedSymMultisegment>& sweep) {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream o;
    for (auto& f : kFaults) {
        auto faulty = [&](const SignedSymMultisegment& x) {
            auto d = ad_symm(x);
            f.corrupt(d);
            return d;
        };
        RunOptions whole;
        whole.ad = faulty;
        Report r = run_properties(sweep, whole);
        std::size_t props = 0;
        for (auto& p : r.properties) props += p.failed > 0;

        std::size_t applied = 0, caught = 0;
        std::string missed;
        for (auto& s : sweep) {
            SignedSymMultisegment probe = ad_symm(s);
            if (!f.corrupt(probe)) continue;
            ++applied;
            RunOptions opt;
            opt.threads = 1;
            opt.ad = faulty;
            opt.suites = {Suite::involution, Suite::invariants, Suite::roundtrip};
            bool hit = !run_properties({s}, opt).all_pass();
            if (!hit) {  // the remaining suites are slower, so only on a miss
                opt.suites = all_suites();
                hit = !run_properties({s}, opt).all_pass();
            }
            if (hit) ++caught;
            else if (missed.empty()) missed = cli::render_dsl(s);
        }
        bool kind_ok = !r.all_pass() && applied > 0 && (!f.every_input || caught == applied);
        ok = ok && kind_ok;
        o << f.name << ": " << props << " properties fail, inputs " << caught << "/" << applied;
        if (!missed.empty()) o << " [undetected: " << missed << "]";
        o << "; ";
    }
    o << since(t0) << " s";
    report(9, "fault sensitivity", ok, o.str());
}

}  // namespace

int main() {
    golden();
    auto sweep = standard_sweep(4, 3, 3);
    sweep_criteria(sweep);
    mw_suite();
    ugly();
    dataset();
    faults(sweep);
    std::printf("%s\n", failures ? "acceptance: FAIL" : "acceptance: PASS");
    return failures ? 1 : 0;
}
