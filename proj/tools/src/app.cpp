#include "azdual/cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "azdual/ad_core.hpp"
#include "azdual/cli/io.hpp"
#include "azdual/derivatives.hpp"
#include "azdual/mw_gl.hpp"
#include "azdual/verify.hpp"
#include "json.hpp"

namespace azd::cli {

namespace {

using nlohmann::json;

// A positional argument is a file path, "-" for stdin, or the document itself.
std::string slurp(const std::string& arg) {
    if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::error_code ec;
    if (arg.size() < 4096 && std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream f(arg, std::ios::binary);
        if (!f) throw DomainError("cannot read " + arg);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }
    return arg;
}

Format pick_format(const std::string& flag, Format input) {
    if (flag == "json") return Format::json;
    if (flag == "dsl") return Format::dsl;
    return input;
}

int line_index(const LineTable& lines, const std::string& id) {
    if (id.empty()) {
        require(lines.size() == 1, "--line is required when the input has " + std::to_string(lines.size()) + " lines");
        return 0;
    }
    int li = find_line(lines, id);
    require(li >= 0, "no line '" + id + "' in the input");
    return li;
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv(kSeedEnv)) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw DomainError(std::string(kSeedEnv) + " is not a number: " + s);
        }
    }
    return 1;
}

json property_json(const PropertyResult& p) {
    json o{{"name", p.name}, {"checked", p.checked}, {"failed", p.failed}, {"pass", p.failed == 0}};
    if (!p.counterexample.empty()) o["counterexample"] = p.counterexample;
    return o;
}

std::string csv_field(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c;
    }
    return r + "\"";
}

LineTable parse_lines(const std::string& text) {
    if (text.empty()) return single_line(LineClass::good, Grid::integral);
    Document d = parse_unchecked(text, false);
    require(!d.lines.empty(), "--lines declares no line");
    return d.lines;
}

struct Options {
    std::string input;
    std::string format = "auto";
    std::string target;
    std::string line;
    std::string x;
    int side = 0;
    bool L_chunk = false;
    int max_coeff = 2;
    int max_pairs = 3;
    int max_centered = 3;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::size_t kz_instances = 1000;
    int N = 2, km = 2, kphi = 2;
    std::size_t count = 0;
    std::string out;
    std::string lines;
};

int cmd_dual(const Options& o, std::ostream& out) {
    Document d = parse_input(slurp(o.input));
    Document r = d;
    switch (d.kind) {
        case Kind::data: r.data = ad_data(d.data); break;
        case Kind::symmetric: r.sym = ad_symm(d.sym); break;
        case Kind::multisegment: throw DomainError("dual needs Langlands data or symmetric data; use mw for a plain multisegment");
    }
    out << render(r, pick_format(o.format, d.format)) << "\n";
    return kOk;
}

int cmd_mw(const Options& o, std::ostream& out) {
    Document d = parse_input(slurp(o.input));
    require(d.kind == Kind::multisegment, "mw needs a plain multisegment such as \"[-2,1]@rho\"");
    Document r = d;
    r.multi = mw_transpose(d.multi);
    out << render(r, pick_format(o.format, d.format)) << "\n";
    return kOk;
}

int cmd_capacity(const Options& o, std::ostream& out) {
    Document d = parse_input(slurp(o.input));
    require(d.kind == Kind::multisegment, "capacity needs a plain multisegment");
    Segment t = parse_segment(o.target, d.lines);
    Multisegment on;
    for (auto& x : d.multi)
        if (x.line == t.line && x.side == t.side) on.push_back(x);
    out << kz_capacity(on, t) << "\n";
    return kOk;
}

int cmd_derive(const Options& o, std::ostream& out) {
    Document d = parse_input(slurp(o.input));
    require(d.kind != Kind::multisegment, "derive needs Langlands data or symmetric data");
    SignedSymMultisegment s = d.kind == Kind::data ? transfer(d.data) : d.sym;
    int li = line_index(s.lines, o.line);
    DerivativeResult res;
    if (o.L_chunk) {
        require(o.x.empty(), "--x and --L-chunk exclude each other");
        res = derivative_L(s, li);
    } else {
        require(!o.x.empty(), "derive needs --x or --L-chunk");
        auto x = HalfInt::parse(o.x);
        require(x.has_value(), "--x expects k or k/2, got '" + o.x + "'");
        res = derivative(s, li, *x, o.side);
    }
    Document r = d;
    if (d.kind == Kind::data) r.data = untransfer(res.result);
    else r.sym = res.result;
    Format f = pick_format(o.format, d.format);
    if (f == Format::json) out << "{\"k\": " << res.k << ", \"result\": " << render(r, f) << "}\n";
    else out << "# k = " << res.k << "\n" << render(r, f) << "\n";
    return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    Document d = parse_unchecked(slurp(o.input), false);
    ValidationReport rep;
    if (d.kind == Kind::data) rep = validate(d.data);
    else if (d.kind == Kind::symmetric) rep = validate(d.sym);
    bool json_out = pick_format(o.format, d.format) == Format::json;
    if (json_out) {
        json v = json::array();
        for (auto& x : rep) v.push_back({{"condition", x.condition}, {"detail", x.detail}});
        out << json{{"valid", rep.empty()}, {"violations", v}}.dump(2) << "\n";
    } else if (rep.empty()) {
        out << "valid\n";
    } else {
        for (auto& x : rep) out << x.condition << ": " << x.detail << "\n";
    }
    return rep.empty() ? kOk : kDomain;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    require(o.max_coeff >= 0 && o.max_pairs >= 0 && o.max_centered >= 0, "bounds must be nonnegative");
    std::vector<Suite> core;
    bool mw = o.suites.empty(), kz = o.suites.empty();
    for (auto& name : o.suites) {
        if (name == "mw") mw = true;
        else if (name == "kz") kz = true;
        else if (auto s = suite_from_string(name)) core.push_back(*s);
        else throw DomainError("unknown suite '" + name + "'");
    }
    if (o.suites.empty()) core = all_suites();

    Report rep;
    if (!core.empty()) {
        auto inputs = standard_sweep(2 * o.max_coeff, o.max_pairs, o.max_centered);
        SymEnumParams up;
        up.lines = single_line(LineClass::ugly, Grid::integral);
        up.bound2 = 2 * o.max_coeff;
        up.max_pairs = o.max_pairs;
        up.max_centered = 0;
        enumerate_symmetric(up, [&](const SignedSymMultisegment& s) { inputs.push_back(s); });
        RunOptions ro;
        ro.suites = core;
        ro.threads = o.threads;
        rep = run_properties(inputs, ro);
    }
    bool ugly = std::find(core.begin(), core.end(), Suite::ugly) != core.end();
    if (ugly) rep.properties.push_back(check_ugly_reduction(3, 4));
    if (mw) rep.properties.push_back(check_mw_involution(3, 6));
    if (kz) rep.properties.push_back(check_kz_identity(o.kz_instances, 8, 5, o.seed));

    json props = json::array();
    bool pass = true;
    for (auto& p : rep.properties) {
        props.push_back(property_json(p));
        pass = pass && p.failed == 0;
        if (p.failed) err << "FAIL " << p.name << ": " << p.counterexample << "\n";
    }
    out << json{{"inputs", rep.inputs}, {"pass", pass}, {"properties", props}}.dump(2) << "\n";
    return pass ? kOk : kDomain;
}

int cmd_dataset(const Options& o, std::ostream& out, std::ostream& err) {
    EnumParams p;
    p.N = o.N;
    p.km = o.km;
    p.kphi = o.kphi;
    p.lines = parse_lines(o.lines);
    p.sampled = o.count > 0;
    p.count = o.count;
    p.seed = o.seed;
    require(p.N >= 0 && p.km >= 0 && p.kphi >= 0, "--N, --km and --kphi must be nonnegative");

    std::ofstream file;
    bool jsonl = false;
    if (!o.out.empty()) {
        std::string f = o.format;
        if (f == "auto") f = std::filesystem::path(o.out).extension() == ".jsonl" ? "jsonl" : "csv";
        require(f == "csv" || f == "jsonl", "dataset --format is csv or jsonl");
        jsonl = f == "jsonl";
        file.open(o.out, std::ios::binary);
        require(static_cast<bool>(file), "cannot write " + o.out);
        if (!jsonl) file << "input,dual,degree,e_max,sign_product_in,sign_product_out\n";
    }

    auto t0 = std::chrono::steady_clock::now();
    AppendixStats st;
    std::size_t plus_changed = 0;
    enumerate_data(p, [&](const LanglandsData& d) {
        SignedSymMultisegment s = transfer(d);
        SignedSymMultisegment sd = ad_symm(s);
        LanglandsData dual = untransfer(sd);
        appendix_accumulate(st, d, dual);
        int sp_in = sign_product(s), sp_out = sign_product(sd);
        if (sp_in != sp_out) ++plus_changed;
        if (!file.is_open()) return;
        std::string in_j = render_json(d, -1), out_j = render_json(dual, -1);
        if (jsonl) {
            file << "{\"input\":" << in_j << ",\"dual\":" << out_j << ",\"degree\":" << degree(s)
                 << ",\"e_max\":\"" << e_max(s).str() << "\",\"sign_product\":[" << sp_in << "," << sp_out << "]}\n";
        } else {
            file << csv_field(in_j) << "," << csv_field(out_j) << "," << degree(s) << "," << e_max(s).str() << ","
                 << sp_in << "," << sp_out << "\n";
        }
    });
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    auto rate = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
    json rep{
        {"samples", st.samples},
        {"e_max_preservation", {{"checked", st.emax_checked}, {"violations", st.emax_violations}}},
        {"sign_product_changes", plus_changed},
        {"first_beginning",
         {{"checked", st.first_begin_checked},
          {"hits", st.first_begin_hits},
          {"rate", rate(st.first_begin_hits, st.first_begin_checked)},
          {"literal_hits", st.first_begin_literal_hits},
          {"literal_rate", rate(st.first_begin_literal_hits, st.first_begin_checked)}}},
    };
    out << rep.dump(2) << "\n";
    err << "dataset: " << st.samples << " data in " << secs << " s\n";
    return st.emax_violations == 0 && plus_changed == 0 ? kOk : kDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Aubert-Zelevinsky duals of Langlands data for Sp and odd SO", "azdual"};
    app.require_subcommand(1);
    Options o;
    try {
        o.seed = default_seed();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    auto add_input = [&](CLI::App* c) {
        c->add_option("input", o.input, "file, '-' for stdin, or the document text")->required();
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"auto", "json", "dsl"}));
    };
    auto* dual = app.add_subcommand("dual", "dual of Langlands data or symmetric data");
    add_input(dual);
    auto* mw = app.add_subcommand("mw", "Zelevinsky dual of a plain multisegment");
    add_input(mw);
    auto* cap = app.add_subcommand("capacity", "path capacity of the precedence graph for a target segment");
    add_input(cap);
    cap->add_option("--target", o.target, "target segment, e.g. [-1,0]@rho")->required();
    auto* der = app.add_subcommand("derive", "highest derivative at one exponent, or the L([-1,0]) chunk");
    add_input(der);
    der->add_option("--line", o.line, "line id (optional with a single line)");
    der->add_option("--x", o.x, "exponent k or k/2, nonzero");
    der->add_option("--side", o.side, "ugly lines: 0 for rho, 1 for its dual")->check(CLI::Range(0, 1));
    der->add_flag("--L-chunk", o.L_chunk, "derivative by the chunk L([-1,0])");
    auto* chk = app.add_subcommand("check", "run the property suites over an exhaustive sweep");
    chk->add_option("--max-coeff", o.max_coeff, "coefficients satisfy |c| <= this");
    chk->add_option("--max-pairs", o.max_pairs, "at most this many dual pairs");
    chk->add_option("--max-centered", o.max_centered, "at most this many centered segments");
    chk->add_option("--suite", o.suites,
                    "involution, invariants, commutation, closed_form, roundtrip, ugly, mw, kz (repeatable; default all)");
    chk->add_option("--seed", o.seed, "seed of the random capacity instances");
    chk->add_option("--kz-instances", o.kz_instances, "random instances for the capacity identity");
    chk->add_option("--threads", o.threads, "worker threads, 0 for all cores");
    auto* ds = app.add_subcommand("dataset", "enumerate data, dualize, and report the preserved quantities");
    ds->add_option("--N", o.N, "beginnings >= -N, dimensions <= 2N+1");
    ds->add_option("--km", o.km, "max segments in m");
    ds->add_option("--kphi", o.kphi, "max tempered components");
    ds->add_option("--count", o.count, "sample this many data; 0 enumerates all");
    ds->add_option("--seed", o.seed, "sampling seed");
    ds->add_option("--out", o.out, "corpus file (.csv or .jsonl)");
    ds->add_option("--format", o.format, "corpus format")->check(CLI::IsMember({"auto", "csv", "jsonl"}));
    ds->add_option("--lines", o.lines, "line declarations, e.g. \"line rho good int; line sigma bad half\"");
    auto* val = app.add_subcommand("validate", "report every violated membership condition");
    add_input(val);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run 'azdual --help' for the subcommands\n";
        return kUsage;
    }

    try {
        if (dual->parsed()) return cmd_dual(o, out);
        if (mw->parsed()) return cmd_mw(o, out);
        if (cap->parsed()) return cmd_capacity(o, out);
        if (der->parsed()) return cmd_derive(o, out);
        if (chk->parsed()) return cmd_check(o, out, err);
        if (ds->parsed()) return cmd_dataset(o, out, err);
        if (val->parsed()) return cmd_validate(o, out);
    } catch (const ParseError& e) {
        err << "error at " << e.what() << "\n";
        return kDomain;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}

}  // namespace azd::cli
