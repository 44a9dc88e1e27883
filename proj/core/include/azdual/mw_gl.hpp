#pragma once

#include <vector>

#include "azdual/langdata.hpp"

namespace azd {

struct MwStep {
    Segment produced;      // [e(last), e(first)]
    Multisegment rest;     // m with the chain ends removed
    std::vector<Segment> chain;
};

// One Moeglin-Waldspurger step. m must be nonempty and live on one line/side.
MwStep mw_step(const Multisegment& m);

// Zelevinsky dual m^t, computed line by line (and side by side).
Multisegment mw_transpose(const Multisegment& m);

// Maximal number of vertex-disjoint paths through columns b(target)..e(target)
// in the graph with vertices (D, x), x in D and target, and edges
// (D, x) -> (D', x+1) whenever D precedes D'.
int kz_capacity(const Multisegment& m, const Segment& target);

// Same graph built on labeled data, where the edge test is the strict
// labeled order instead of precedence.
int kz_capacity_labeled(const std::vector<LabeledSeg>& y, const Segment& target);

// Number of segments of m containing target.
int containing_count(const Multisegment& m, const Segment& target);

}  // namespace azd
