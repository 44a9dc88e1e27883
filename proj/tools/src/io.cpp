#include "azdual/cli/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <vector>

#include "json.hpp"

namespace azd::cli {

namespace {

using nlohmann::json;

const char* kDefaultLine = "rho";

// ---- raw terms shared by both front ends -------------------------------------

struct RawTerm {
    int count = 1;
    bool tempered = false;
    HalfInt b, e;
    int a = 0;
    std::string line_id;  // empty means the default line
    bool dual_side = false;
    std::optional<int> side;  // JSON gives it explicitly
    int sign = 0;             // 0 when absent
    std::string where;
};

enum class Section { none, m, phi, s, bare };

struct RawDoc {
    LineTable lines;
    std::vector<std::string> decl_where;
    std::map<Section, std::vector<RawTerm>> sections;
};

Grid inferred_grid(const RawTerm& t) {
    if (t.tempered) return t.a % 2 == 1 ? Grid::integral : Grid::half_integral;
    return t.b.integral() ? Grid::integral : Grid::half_integral;
}

// Declares missing lines in order of first use.
void auto_declare(RawDoc& rd) {
    for (auto sec : {Section::m, Section::phi, Section::s, Section::bare}) {
        auto it = rd.sections.find(sec);
        if (it == rd.sections.end()) continue;
        for (auto& t : it->second) {
            std::string id = t.line_id.empty() ? kDefaultLine : t.line_id;
            if (find_line(rd.lines, id) >= 0) continue;
            rd.lines.push_back({id, LineClass::good, inferred_grid(t)});
        }
    }
}

Segment resolve_segment(const RawTerm& t, const LineTable& lines) {
    std::string id = t.line_id.empty() ? kDefaultLine : t.line_id;
    int li = find_line(lines, id);
    if (li < 0) throw ParseError(t.where, "undeclared line '" + id + "'");
    const LineDecl& L = lines[li];
    int side = kSelfDual;
    if (L.cls == LineClass::ugly) side = t.side.value_or(t.dual_side ? 1 : 0);
    else if ((t.side && *t.side != kSelfDual) || t.dual_side)
        throw ParseError(t.where, "side marker on the self-dual line '" + id + "'");
    if (side != kSelfDual && side != 0 && side != 1) throw ParseError(t.where, "side must be 0 or 1");
    Segment d{li, side, t.b, t.e};
    if (!L.on_grid(t.b) || !L.on_grid(t.e))
        throw ParseError(t.where, "grid: " + d.str() + " is off the " + to_string(L.grid) + " grid of line '" + id + "'");
    if (d.empty()) throw ParseError(t.where, "empty segment " + d.str());
    return d;
}

TemperedComponent resolve_tempered(const RawTerm& t, const LineTable& lines) {
    std::string id = t.line_id.empty() ? kDefaultLine : t.line_id;
    int li = find_line(lines, id);
    if (li < 0) throw ParseError(t.where, "undeclared line '" + id + "'");
    const LineDecl& L = lines[li];
    int side = kSelfDual;
    if (L.cls == LineClass::ugly) side = t.side.value_or(t.dual_side ? 1 : 0);
    else if ((t.side && *t.side != kSelfDual) || t.dual_side)
        throw ParseError(t.where, "side marker on the self-dual line '" + id + "'");
    if (t.a < 1) throw ParseError(t.where, "dimension must be >= 1");
    if (!L.on_grid(HalfInt::from_twice(t.a - 1)))
        throw ParseError(t.where, "grid: S" + std::to_string(t.a) + " is off the " + to_string(L.grid) +
                                      " grid of line '" + id + "'");
    return {li, side, t.a, t.sign};
}

void raise_validation(const ValidationReport& r) {
    if (!r.empty()) throw ParseError("validation", r.front().condition + ": " + r.front().detail);
}

Document build(RawDoc rd, Format fmt, bool check) {
    auto has = [&](Section s) { return rd.sections.count(s) > 0; };
    bool data = has(Section::m) || has(Section::phi);
    int kinds = (data ? 1 : 0) + (has(Section::s) ? 1 : 0) + (has(Section::bare) ? 1 : 0);
    if (kinds > 1) throw ParseError("document", "mixes Langlands data, symmetric and plain multisegment sections");
    auto_declare(rd);
    for (std::size_t i = 0; i < rd.lines.size(); ++i) {
        const auto& L = rd.lines[i];
        std::string w = i < rd.decl_where.size() ? rd.decl_where[i] : "lines";
        if (L.cls == LineClass::ugly && L.grid != Grid::integral)
            throw ParseError(w, "ugly line '" + L.id + "' must use the integral grid");
        for (std::size_t j = 0; j < i; ++j)
            if (rd.lines[j].id == L.id) throw ParseError(w, "duplicate line '" + L.id + "'");
    }

    Document doc;
    doc.format = fmt;
    doc.lines = rd.lines;
    if (has(Section::s)) {
        doc.kind = Kind::symmetric;
        doc.sym.lines = rd.lines;
        for (auto& t : rd.sections[Section::s]) {
            if (t.tempered) throw ParseError(t.where, "tempered term in a symmetric section");
            Segment d = resolve_segment(t, rd.lines);
            bool needs_sign = d.centered() && rd.lines[d.line].cls == LineClass::good;
            if (t.sign != 0 && !d.centered()) throw ParseError(t.where, "sign on the non-centered segment " + d.str());
            if (t.sign != 0 && !needs_sign)
                throw ParseError(t.where, "sign on " + d.str() + ", which is not on a good line");
            if (needs_sign && t.sign == 0) throw ParseError(t.where, "centered " + d.str() + " on a good line needs :+ or :-");
            for (int k = 0; k < t.count; ++k) doc.sym.items.push_back({d, needs_sign ? t.sign : 1});
        }
        canonicalize(doc.sym.items);
        if (check) raise_validation(validate(doc.sym));
    } else if (has(Section::bare)) {
        doc.kind = Kind::multisegment;
        for (auto& t : rd.sections[Section::bare]) {
            if (t.tempered) throw ParseError(t.where, "tempered term in a plain multisegment");
            if (t.sign != 0) throw ParseError(t.where, "sign in a plain multisegment");
            Segment d = resolve_segment(t, rd.lines);
            for (int k = 0; k < t.count; ++k) doc.multi.push_back(d);
        }
        canonicalize(doc.multi);
    } else {
        doc.kind = Kind::data;
        doc.data.lines = rd.lines;
        for (auto& t : rd.sections[Section::m]) {
            if (t.tempered) throw ParseError(t.where, "tempered term in the m section");
            if (t.sign != 0) throw ParseError(t.where, "sign on a segment of m");
            Segment d = resolve_segment(t, rd.lines);
            if (d.b.twice + d.e.twice >= 0)
                throw ParseError(t.where, "negative center: " + d.str() + " does not have a strictly negative center");
            for (int k = 0; k < t.count; ++k) doc.data.n.push_back(d);
        }
        for (auto& t : rd.sections[Section::phi]) {
            if (!t.tempered) throw ParseError(t.where, "segment in the phi section, expected S<a>");
            TemperedComponent c = resolve_tempered(t, rd.lines);
            bool good = rd.lines[c.line].cls == LineClass::good;
            if (good && t.sign == 0) throw ParseError(t.where, "eta: S" + std::to_string(t.a) + " on a good line needs :+ or :-");
            if (!good && t.sign != 0) throw ParseError(t.where, "eta: S" + std::to_string(t.a) + " is not on a good line");
            for (int k = 0; k < t.count; ++k) doc.data.phi.push_back(c);
        }
        canonicalize(doc.data);
        if (check) raise_validation(validate(doc.data));
    }
    return doc;
}

// ---- compact text front end ------------------------------------------------------

class Lexer {
public:
    explicit Lexer(std::string_view t) : t_(t) {}

    std::string where(std::size_t at) const {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < at && k < t_.size(); ++k) {
            if (t_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return "line " + std::to_string(line) + ", column " + std::to_string(col);
    }
    std::string here() { return where(skip()); }

    std::size_t skip() {
        while (i_ < t_.size()) {
            char c = t_[i_];
            if (c == '#') {
                while (i_ < t_.size() && t_[i_] != '\n') ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else {
                break;
            }
        }
        return i_;
    }
    bool eof() { return skip() >= t_.size(); }
    char peek() { return eof() ? '\0' : t_[i_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& msg) {
        std::size_t at = skip();
        std::string got = at < t_.size() ? std::string("'") + t_[at] + "'" : "end of input";
        throw ParseError(where(at), msg + ", found " + got);
    }

    std::string ident() {
        skip();
        std::size_t s = i_;
        if (i_ < t_.size() && (std::isalpha(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_')) {
            ++i_;
            while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_' || t_[i_] == '\'')) ++i_;
        }
        if (s == i_) fail("expected an identifier");
        return std::string(t_.substr(s, i_ - s));
    }

    int integer() {
        skip();
        std::size_t s = i_;
        while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
        if (s == i_) fail("expected a number");
        int v = 0;
        auto [p, ec] = std::from_chars(t_.data() + s, t_.data() + i_, v);
        if (ec != std::errc()) throw ParseError(where(s), "number out of range");
        (void)p;
        return v;
    }

    HalfInt coeff() {
        std::size_t s = skip();
        if (i_ < t_.size() && (t_[i_] == '-' || t_[i_] == '+')) ++i_;
        while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
        std::size_t j = i_;
        while (j < t_.size() && (t_[j] == ' ' || t_[j] == '\t')) ++j;
        if (j < t_.size() && t_[j] == '/') {
            i_ = j + 1;
            while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t')) ++i_;
            while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
        }
        auto v = HalfInt::parse(t_.substr(s, i_ - s));
        if (!v) {
            i_ = s;
            fail("expected a coefficient k or k/2 with k odd");
        }
        return *v;
    }

    std::size_t pos() { return skip(); }
    void rewind(std::size_t p) { i_ = p; }

private:
    std::string_view t_;
    std::size_t i_ = 0;
};

RawTerm dsl_term(Lexer& lx) {
    RawTerm t;
    t.where = lx.here();
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
        t.count = lx.integer();
        lx.expect('*', "'*' after a multiplicity");
        if (t.count < 1) throw ParseError(t.where, "multiplicity must be >= 1");
    }
    if (lx.accept('[')) {
        t.b = lx.coeff();
        lx.expect(',', "','");
        t.e = lx.coeff();
        lx.expect(']', "']'");
    } else if (lx.peek() == 'S') {
        lx.accept('S');
        t.tempered = true;
        t.a = lx.integer();
    } else {
        lx.fail("expected a segment [b,e] or a component S<a>");
    }
    if (lx.accept('@')) {
        t.line_id = lx.ident();
        if (lx.accept('~')) t.dual_side = true;
    } else if (lx.accept('~')) {
        t.dual_side = true;
    }
    if (lx.accept(':')) {
        if (lx.accept('+')) t.sign = 1;
        else if (lx.accept('-')) t.sign = -1;
        else lx.fail("expected '+' or '-' after ':'");
    }
    return t;
}

std::vector<RawTerm> dsl_terms(Lexer& lx) {
    std::vector<RawTerm> v;
    if (lx.peek() == '0') {
        std::size_t p = lx.pos();
        lx.integer();
        if (lx.peek() != '*') return v;
        lx.rewind(p);
    }
    if (lx.eof() || lx.peek() == ';') return v;
    v.push_back(dsl_term(lx));
    while (lx.accept('+')) v.push_back(dsl_term(lx));
    return v;
}

LineClass parse_class(Lexer& lx, const std::string& w) {
    std::string c = lx.ident();
    if (c == "good") return LineClass::good;
    if (c == "bad") return LineClass::bad;
    if (c == "ugly") return LineClass::ugly;
    throw ParseError(w, "line class must be good, bad or ugly, got '" + c + "'");
}

Grid parse_grid(Lexer& lx, const std::string& w) {
    std::string g = lx.ident();
    if (g == "int" || g == "integral") return Grid::integral;
    if (g == "half" || g == "half_integral") return Grid::half_integral;
    throw ParseError(w, "grid must be int or half, got '" + g + "'");
}

RawDoc parse_dsl(std::string_view text) {
    Lexer lx(text);
    RawDoc rd;
    while (!lx.eof()) {
        if (lx.accept(';')) continue;
        std::size_t start = lx.pos();
        std::string w = lx.here();
        Section sec = Section::bare;
        if (std::isalpha(static_cast<unsigned char>(lx.peek())) && lx.peek() != 'S') {
            std::string kw = lx.ident();
            if (kw == "line") {
                std::string lw = lx.here();
                LineDecl L;
                L.id = lx.ident();
                L.cls = parse_class(lx, lw);
                L.grid = parse_grid(lx, lw);
                rd.lines.push_back(L);
                rd.decl_where.push_back(w);
                if (!lx.eof()) lx.expect(';', "';' after a line declaration");
                continue;
            }
            if (kw == "m") sec = Section::m;
            else if (kw == "phi") sec = Section::phi;
            else if (kw == "s") sec = Section::s;
            else throw ParseError(w, "unknown section '" + kw + "', expected line, m, phi or s");
            lx.expect(':', "':' after the section name");
        } else {
            lx.rewind(start);
        }
        if (rd.sections.count(sec)) throw ParseError(w, "section given twice");
        rd.sections[sec] = dsl_terms(lx);
        if (!lx.eof()) lx.expect(';', "';' or '+'");
    }
    return rd;
}

// ---- JSON front end ----------------------------------------------------------------

HalfInt json_coeff(const json& v, const std::string& ptr) {
    if (v.is_number_integer()) return HalfInt::of(v.get<int>());
    if (v.is_string()) {
        auto h = HalfInt::parse(v.get<std::string>());
        if (h) return *h;
    }
    throw ParseError(ptr, "expected a coefficient \"k\" or \"k/2\"");
}

int json_int(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) throw ParseError(ptr, "expected an integer");
    return v.get<int>();
}

int json_sign(const json& v, const std::string& ptr) {
    int s = json_int(v, ptr);
    if (s != 1 && s != -1) throw ParseError(ptr, "sign must be 1 or -1");
    return s;
}

void check_keys(const json& o, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!o.is_object()) throw ParseError(ptr, "expected an object");
    for (auto it = o.begin(); it != o.end(); ++it) {
        bool ok = false;
        for (auto* k : allowed) ok = ok || it.key() == k;
        if (!ok) throw ParseError(ptr + "/" + it.key(), "unknown key");
    }
}

std::vector<RawTerm> json_terms(const json& arr, const std::string& ptr, bool tempered, bool signed_segs) {
    if (!arr.is_array()) throw ParseError(ptr, "expected an array");
    std::vector<RawTerm> v;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& o = arr[i];
        std::string p = ptr + "/" + std::to_string(i);
        RawTerm t;
        t.where = p;
        if (tempered) check_keys(o, p, {"line", "side", "a", "eta"});
        else if (signed_segs) check_keys(o, p, {"line", "side", "b", "e", "eps"});
        else check_keys(o, p, {"line", "side", "b", "e"});
        if (!o.contains("line") || !o["line"].is_string()) throw ParseError(p + "/line", "expected a line id string");
        t.line_id = o["line"].get<std::string>();
        if (o.contains("side")) t.side = json_int(o["side"], p + "/side");
        if (tempered) {
            if (!o.contains("a")) throw ParseError(p + "/a", "missing dimension");
            t.tempered = true;
            t.a = json_int(o["a"], p + "/a");
            if (o.contains("eta")) t.sign = json_sign(o["eta"], p + "/eta");
        } else {
            if (!o.contains("b") || !o.contains("e")) throw ParseError(p, "missing b or e");
            t.b = json_coeff(o["b"], p + "/b");
            t.e = json_coeff(o["e"], p + "/e");
            if (o.contains("eps")) t.sign = json_sign(o["eps"], p + "/eps");
        }
        v.push_back(std::move(t));
    }
    return v;
}

RawDoc parse_json_doc(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), "JSON syntax error");
    }
    check_keys(j, "", {"lines", "m", "phi", "s", "segments"});
    RawDoc rd;
    if (j.contains("lines")) {
        const json& ls = j["lines"];
        if (!ls.is_array()) throw ParseError("/lines", "expected an array");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            std::string p = "/lines/" + std::to_string(i);
            check_keys(ls[i], p, {"id", "class", "grid"});
            LineDecl L;
            if (!ls[i].contains("id") || !ls[i]["id"].is_string()) throw ParseError(p + "/id", "expected a string");
            L.id = ls[i]["id"].get<std::string>();
            std::string c = ls[i].value("class", "good");
            if (c == "good") L.cls = LineClass::good;
            else if (c == "bad") L.cls = LineClass::bad;
            else if (c == "ugly") L.cls = LineClass::ugly;
            else throw ParseError(p + "/class", "expected good, bad or ugly");
            std::string g = ls[i].value("grid", "integral");
            if (g == "integral" || g == "int") L.grid = Grid::integral;
            else if (g == "half-integral" || g == "half") L.grid = Grid::half_integral;
            else throw ParseError(p + "/grid", "expected integral or half-integral");
            rd.lines.push_back(L);
            rd.decl_where.push_back(p);
        }
    }
    if (j.contains("m")) rd.sections[Section::m] = json_terms(j["m"], "/m", false, false);
    if (j.contains("phi")) rd.sections[Section::phi] = json_terms(j["phi"], "/phi", true, false);
    if (j.contains("s")) rd.sections[Section::s] = json_terms(j["s"], "/s", false, true);
    if (j.contains("segments")) rd.sections[Section::bare] = json_terms(j["segments"], "/segments", false, false);
    return rd;
}

// ---- rendering ---------------------------------------------------------------------

json lines_json(const LineTable& lines) {
    json a = json::array();
    for (auto& L : lines) a.push_back({{"id", L.id}, {"class", to_string(L.cls)}, {"grid", to_string(L.grid)}});
    return a;
}

json seg_json(const Segment& d, const LineTable& lines) {
    json o{{"line", lines[d.line].id}, {"b", d.b.str()}, {"e", d.e.str()}};
    if (d.side != kSelfDual) o["side"] = d.side;
    return o;
}

std::string dump(const json& j, int indent) {
    std::string s = j.dump(indent < 0 ? -1 : indent);
    return s;
}

bool default_table(const LineTable& lines, std::optional<Grid> inferred) {
    if (lines.size() != 1) return lines.empty();
    const LineDecl& L = lines.front();
    return L.id == kDefaultLine && L.cls == LineClass::good && L.grid == inferred.value_or(Grid::integral);
}

std::string header(const LineTable& lines) {
    std::string h;
    for (auto& L : lines)
        h += std::string("line ") + L.id + " " + to_string(L.cls) + " " + (L.grid == Grid::integral ? "int" : "half") + "; ";
    return h;
}

std::string term_list(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i) + "*";
        out += terms[i];
        i = j;
    }
    return out;
}

std::string at(const LineTable& lines, int line, int side, bool bare) {
    std::string t = bare ? "" : "@" + lines[line].id;
    if (side == 1) t += "~";
    return t;
}

bool ascending(const Segment& a, const Segment& b) {
    if (a.line != b.line) return a.line < b.line;
    if (a.side != b.side) return a.side < b.side;
    return seg_lt_raw(a.b.twice, a.e.twice, b.b.twice, b.e.twice);
}

std::vector<std::string> seg_terms(std::vector<SignedSeg> items, const LineTable& lines, bool bare, bool with_sign) {
    std::stable_sort(items.begin(), items.end(), [](const SignedSeg& x, const SignedSeg& y) {
        if (x.seg != y.seg) return ascending(x.seg, y.seg);
        return x.eps > y.eps;
    });
    std::vector<std::string> v;
    for (auto& x : items) {
        std::string t = x.seg.str() + at(lines, x.seg.line, x.seg.side, bare);
        if (with_sign && x.seg.centered() && lines[x.seg.line].cls == LineClass::good) t += x.eps > 0 ? ":+" : ":-";
        v.push_back(std::move(t));
    }
    return v;
}

std::optional<Grid> grid_of_first(const std::vector<SignedSeg>& items) {
    if (items.empty()) return std::nullopt;
    return items.front().seg.b.integral() ? Grid::integral : Grid::half_integral;
}

}  // namespace

Document parse_input(std::string_view text) { return parse_unchecked(text, true); }

Document parse_unchecked(std::string_view text, bool check) {
    std::size_t k = 0;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k < text.size() && text[k] == '{') return build(parse_json_doc(text), Format::json, check);
    return build(parse_dsl(text), Format::dsl, check);
}

SignedSymMultisegment parse_symmetric(std::string_view text) {
    Document d = parse_input(text);
    if (d.kind == Kind::symmetric) return d.sym;
    if (d.kind == Kind::data) return transfer(d.data);
    throw ParseError("document", "expected symmetric data (s: ...) or Langlands data (m: ...; phi: ...)");
}

LanglandsData parse_data(std::string_view text) {
    Document d = parse_input(text);
    if (d.kind != Kind::data) throw ParseError("document", "expected Langlands data (m: ...; phi: ...)");
    return d.data;
}

Segment parse_segment(std::string_view text, const LineTable& lines) {
    Lexer lx(text);
    RawTerm t = dsl_term(lx);
    if (!lx.eof()) lx.fail("trailing text after the segment");
    if (t.tempered || t.count != 1 || t.sign != 0) throw ParseError(t.where, "expected a single segment [b,e]@id");
    if (t.line_id.empty() && lines.size() == 1) t.line_id = lines.front().id;
    return resolve_segment(t, lines);
}

std::string render_json(const LanglandsData& d_in, int indent) {
    LanglandsData d = d_in;
    canonicalize(d);
    json m = json::array(), phi = json::array();
    for (auto& s : d.n) m.push_back(seg_json(s, d.lines));
    for (auto& t : d.phi) {
        json o{{"line", d.lines[t.line].id}, {"a", t.a}};
        if (t.side != kSelfDual) o["side"] = t.side;
        if (t.eta != 0) o["eta"] = t.eta;
        phi.push_back(o);
    }
    return dump(json{{"lines", lines_json(d.lines)}, {"m", m}, {"phi", phi}}, indent);
}

std::string render_json(const SignedSymMultisegment& s_in, int indent) {
    auto items = s_in.items;
    canonicalize(items);
    json a = json::array();
    for (auto& x : items) {
        json o = seg_json(x.seg, s_in.lines);
        if (x.seg.centered() && s_in.lines[x.seg.line].cls == LineClass::good) o["eps"] = x.eps;
        a.push_back(o);
    }
    return dump(json{{"lines", lines_json(s_in.lines)}, {"s", a}}, indent);
}

std::string render_json(const Multisegment& m_in, const LineTable& lines, int indent) {
    Multisegment m = m_in;
    canonicalize(m);
    json a = json::array();
    for (auto& d : m) a.push_back(seg_json(d, lines));
    return dump(json{{"lines", lines_json(lines)}, {"segments", a}}, indent);
}

std::string render_dsl(const LanglandsData& d_in) {
    LanglandsData d = d_in;
    canonicalize(d);
    std::optional<Grid> g;
    if (!d.n.empty()) g = d.n.front().b.integral() ? Grid::integral : Grid::half_integral;
    else if (!d.phi.empty()) g = d.phi.front().a % 2 == 1 ? Grid::integral : Grid::half_integral;
    bool bare = default_table(d.lines, g) && !d.lines.empty();
    std::vector<SignedSeg> segs;
    for (auto& s : d.n) segs.push_back({s, 1});
    auto phi = d.phi;
    std::stable_sort(phi.begin(), phi.end(), [](const TemperedComponent& x, const TemperedComponent& y) {
        return std::tie(x.line, x.side, x.a, y.eta) < std::tie(y.line, y.side, y.a, x.eta);
    });
    std::vector<std::string> pt;
    for (auto& t : phi) {
        std::string x = "S" + std::to_string(t.a) + at(d.lines, t.line, t.side, bare);
        if (t.eta != 0) x += t.eta > 0 ? ":+" : ":-";
        pt.push_back(std::move(x));
    }
    std::string h = default_table(d.lines, g) ? "" : header(d.lines);
    return h + "m: " + term_list(seg_terms(segs, d.lines, bare, false)) + "; phi: " + term_list(pt);
}

std::string render_dsl(const SignedSymMultisegment& s) {
    bool def = default_table(s.lines, grid_of_first(s.items));
    bool bare = def && !s.lines.empty();
    return (def ? "" : header(s.lines)) + "s: " + term_list(seg_terms(s.items, s.lines, bare, true));
}

std::string render_dsl(const Multisegment& m, const LineTable& lines) {
    std::vector<SignedSeg> items;
    for (auto& d : m) items.push_back({d, 1});
    bool def = default_table(lines, grid_of_first(items));
    bool bare = def && !lines.empty();
    return (def ? "" : header(lines)) + term_list(seg_terms(items, lines, bare, false));
}

std::string render(const Document& doc, Format f) {
    switch (doc.kind) {
        case Kind::data: return f == Format::json ? render_json(doc.data) : render_dsl(doc.data);
        case Kind::symmetric: return f == Format::json ? render_json(doc.sym) : render_dsl(doc.sym);
        case Kind::multisegment: return f == Format::json ? render_json(doc.multi, doc.lines) : render_dsl(doc.multi, doc.lines);
    }
    return {};
}

}  // namespace azd::cli
