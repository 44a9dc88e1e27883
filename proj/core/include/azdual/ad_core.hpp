#pragma once

#include <cstddef>
#include <vector>

#include "azdual/langdata.hpp"

namespace azd {

// The chain Delta_1 >= ... >= Delta_l stripped by one AD step.
// Plain (bad/ugly) chains carry forced labels and sign +1.
// i and i_dual index the canonical enumeration of section_s (good lines)
// or of the canonical multisegment (bad/ugly lines).
struct InitialSequence {
    std::vector<LabeledSeg> segs;
    std::vector<std::size_t> i;
    std::vector<std::size_t> i_dual;
    int eps0 = 1;
};

struct AdStep {
    InitialSequence seq;
    SignedSymMultisegment m1;    // produced piece
    SignedSymMultisegment rest;  // m#
};

// Everything below works on the part of s supported on `line`; other lines
// are ignored.
InitialSequence ad_initial_sequence(const SignedSymMultisegment& s, int line);
AdStep ad_step(const SignedSymMultisegment& s, int line);

// AD on one line: iterate ad_step until empty.
SignedSymMultisegment ad_line(const SignedSymMultisegment& s, int line);

// Sum of ad_line over every declared line. Validates its input.
SignedSymMultisegment ad_symm(const SignedSymMultisegment& s);

LanglandsData ad_data(const LanglandsData& d);

}  // namespace azd
