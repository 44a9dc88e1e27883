#pragma once

#include <string>

#include "azdual/cli/io.hpp"
#include "azdual/langdata.hpp"

namespace azt {

inline azd::SignedSymMultisegment sym(const std::string& text) { return azd::cli::parse_symmetric(text); }
inline azd::LanglandsData data(const std::string& text) { return azd::cli::parse_data(text); }

inline azd::Segment seg(int b, int e, int line = 0, int side = azd::kSelfDual) {
    return azd::Segment::make(2 * b, 2 * e, line, side);
}

// same multiset and signs, order-insensitive
inline bool same(azd::SignedSymMultisegment a, azd::SignedSymMultisegment b) {
    azd::canonicalize(a.items);
    azd::canonicalize(b.items);
    return a.lines == b.lines && a.items == b.items;
}

}  // namespace azt
