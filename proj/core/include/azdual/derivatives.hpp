#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "azdual/langdata.hpp"

namespace azd {

// X and Y are 0..nx-1 and 0..ny-1 in increasing order.
// f[x] is the partner of x in Y, or -1 when x is outside the domain.
struct MatchingResult {
    std::vector<int> f;
    std::vector<std::size_t> x0, xc;  // domain and its complement
    std::vector<std::size_t> yc;      // unmatched elements of Y
};

// rel(y, x) reads "y ~> x". With check set, throws InvariantError if rel is
// not traversable; the greedy pass runs either way.
MatchingResult best_matching(std::size_t nx, std::size_t ny,
                             const std::function<bool(std::size_t, std::size_t)>& rel, bool check = true);

struct DerivativeResult {
    SignedSymMultisegment result;
    int k = 0;
};

// Highest rho|.|^x derivative on one line. On an ugly pair, `side` selects
// rho (0) or its contragredient (1); it is ignored on self-dual lines.
DerivativeResult derivative(const SignedSymMultisegment& s, int line, HalfInt x, int side = 0);

// The L([-1,0]) chunk derivative. Requires an integral self-dual line and
// y-reducedness for all -e_max < y < 0 and for y = -1; throws DomainError otherwise.
DerivativeResult derivative_L(const SignedSymMultisegment& s, int line);

// Precondition check used by derivative_L. Empty string when it holds.
std::string derivative_L_precondition(const SignedSymMultisegment& s, int line);

struct LineReduced {
    int line = 0;
    std::vector<std::pair<HalfInt, int>> orders;  // (x, order) for every nonzero x in range
    bool x_reduced = true;                        // all orders zero
    int L_order = -1;                             // -1 when not applicable
};

struct ReducedReport {
    std::vector<LineReduced> lines;
    bool reduced = true;
};

ReducedReport reduced_report(const SignedSymMultisegment& s);

}  // namespace azd
