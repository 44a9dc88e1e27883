#pragma once

#include <string>
#include <vector>

#include "azdual/segment.hpp"

namespace azd {

enum class LineClass { good, bad, ugly };
enum class Grid { integral, half_integral };

struct LineDecl {
    std::string id;
    LineClass cls = LineClass::good;
    Grid grid = Grid::integral;

    // good lines: integral grid; bad lines: half-integral grid
    bool same_type() const {
        if (cls == LineClass::good) return grid == Grid::integral;
        if (cls == LineClass::bad) return grid == Grid::half_integral;
        return false;
    }
    bool on_grid(HalfInt v) const { return v.integral() == (grid == Grid::integral); }
    bool operator==(const LineDecl&) const = default;
};

using LineTable = std::vector<LineDecl>;

const char* to_string(LineClass c);
const char* to_string(Grid g);

// Plain multisegment: canonical order is by (line, side) then descending seg_lt.
using Multisegment = std::vector<Segment>;

// true if a comes before b in canonical storage order
bool canon_before(const Segment& a, const Segment& b);
void canonicalize(Multisegment& m);  // drops empties, sorts
int multiplicity(const Multisegment& m, const Segment& d);
int degree(const Multisegment& m);

struct SignedSeg {
    Segment seg;
    int eps = 1;  // +1 for every non-centered segment
    auto operator<=>(const SignedSeg&) const = default;
};

struct SignedSymMultisegment {
    LineTable lines;
    std::vector<SignedSeg> items;

    bool operator==(const SignedSymMultisegment&) const = default;
};

void canonicalize(std::vector<SignedSeg>& items);
Multisegment underlying(const SignedSymMultisegment& s);
int degree(const SignedSymMultisegment& s);

struct TemperedComponent {
    int line = 0;
    int side = kSelfDual;
    int a = 1;    // dimension of S_a
    int eta = 0;  // +-1 on good lines, 0 (absent) elsewhere
    auto operator<=>(const TemperedComponent&) const = default;
};

struct LanglandsData {
    LineTable lines;
    Multisegment n;                     // every center strictly negative
    std::vector<TemperedComponent> phi;

    bool operator==(const LanglandsData&) const = default;
};

void canonicalize(LanglandsData& d);

struct Violation {
    std::string condition;
    std::string detail;
};
using ValidationReport = std::vector<Violation>;

ValidationReport validate(const SignedSymMultisegment& s);
ValidationReport validate(const LanglandsData& d);

// Throws DomainError listing the first violation.
void require_valid(const SignedSymMultisegment& s);
void require_valid(const LanglandsData& d);

SignedSymMultisegment transfer(const LanglandsData& d);
LanglandsData untransfer(const SignedSymMultisegment& s);

// ---- labeled segments --------------------------------------------------

enum class Label { le0 = 0, eq0 = 1, ge0 = 2 };

struct LabeledSeg {
    Segment seg;
    Label label = Label::eq0;
    int eps = 1;
    auto operator<=>(const LabeledSeg&) const = default;
};

struct LabeledSymMultisegment {
    LineTable lines;
    std::vector<LabeledSeg> items;  // sorted descending for labeled_cmp within each line

    bool operator==(const LabeledSymMultisegment&) const = default;
};

const char* to_string(Label l);

// Three-class order: le0 < eq0 < ge0; seg_lt inside le0/ge0, ends inside eq0.
// Returns <0, 0, >0. Throws DomainError across lines.
int labeled_cmp(const LabeledSeg& x, const LabeledSeg& y);
LabeledSeg labeled_dual(const LabeledSeg& x);
LabeledSeg labeled_iota(const LabeledSeg& x);

LabeledSymMultisegment section_s(const SignedSymMultisegment& s);
SignedSymMultisegment projection_p(const LabeledSymMultisegment& y);

// ---- projections and signs ---------------------------------------------

SignedSymMultisegment line_project(const SignedSymMultisegment& s, int line);
LanglandsData line_project(const LanglandsData& d, int line);
int find_line(const LineTable& lines, const std::string& id);  // -1 if absent

// Product of the signs of centered segments on a good line.
int sign_product(const SignedSymMultisegment& s, int line);
// Product over all good lines.
int sign_product(const SignedSymMultisegment& s);
bool is_plus(const LanglandsData& d);

// ---- one-line text forms -------------------------------------------------

// "2*[0,0]@rho:- + [-1,1]@rho:+"; signs only on centered self-dual segments.
std::string describe(const SignedSymMultisegment& s);
std::string describe(const Multisegment& m, const LineTable& lines);
std::string describe(const LanglandsData& d);

// Largest end over all segments, 0 for the empty datum.
HalfInt e_max(const SignedSymMultisegment& s);
HalfInt e_max(const SignedSymMultisegment& s, int line);

}  // namespace azd
