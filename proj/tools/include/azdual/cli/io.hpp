#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "azdual/error.hpp"
#include "azdual/langdata.hpp"

namespace azd::cli {

// Syntax or validation problem in user text. `where` is "line L, column C"
// for the compact form and a JSON pointer for JSON documents.
class ParseError : public DomainError {
public:
    ParseError(std::string where, const std::string& what)
        : DomainError(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

enum class Kind { data, symmetric, multisegment };
enum class Format { json, dsl };

struct Document {
    Kind kind = Kind::data;
    Format format = Format::dsl;
    LineTable lines;
    LanglandsData data;           // kind == data
    SignedSymMultisegment sym;    // kind == symmetric
    Multisegment multi;           // kind == multisegment
};

// JSON when the first non-blank character is '{', the compact form otherwise.
// Blank text is the empty datum. Data and symmetric documents are validated;
// multisegments only need declared lines and on-grid coefficients.
Document parse_input(std::string_view text);

// Same, but with check unset the membership conditions are left to the
// caller (syntax, line and grid errors still throw).
Document parse_unchecked(std::string_view text, bool check);

// Expect a particular kind; a data document is accepted where a symmetric one
// is wanted and transferred.
SignedSymMultisegment parse_symmetric(std::string_view text);
LanglandsData parse_data(std::string_view text);

// One segment in the compact syntax, resolved against `lines`.
Segment parse_segment(std::string_view text, const LineTable& lines);

// Canonical JSON: fixed key order, segments in canonical storage order,
// half-integers as strings. `indent` < 0 gives one line.
std::string render_json(const LanglandsData& d, int indent = 2);
std::string render_json(const SignedSymMultisegment& s, int indent = 2);
std::string render_json(const Multisegment& m, const LineTable& lines, int indent = 2);

// Compact form. Terms run in increasing order of beginnings within each line.
// Line headers and "@id" are left out when the table is the single default
// line that parsing would infer anyway.
std::string render_dsl(const LanglandsData& d);
std::string render_dsl(const SignedSymMultisegment& s);
std::string render_dsl(const Multisegment& m, const LineTable& lines);

std::string render(const Document& doc, Format f);

}  // namespace azd::cli
