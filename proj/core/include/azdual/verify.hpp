#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "azdual/langdata.hpp"

namespace azd {

// ---- enumeration ---------------------------------------------------------------

struct EnumParams {
    int N = 2;      // n: every b >= -N; phi: a <= 2N+1
    int km = 2;     // max segments in n
    int kphi = 2;   // max tempered components
    LineTable lines;  // empty means one integral good line "rho"
    bool sampled = false;
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

using DataSink = std::function<void(const LanglandsData&)>;

// Exhaustive mode visits each datum exactly once in a fixed order.
// Sampled mode draws `count` data with std::mt19937_64(seed):
//   |n| uniform in [0,km], each segment uniform over the admissible list;
//   |phi| uniform in [0,kphi], each component uniform over the admissible
//   list, eta drawn once per distinct good component.
// Bad-line components come in pairs and ugly ones in (rho, rho dual) pairs,
// each pair using two slots of kphi.
void enumerate_data(const EnumParams& p, const DataSink& sink);
std::vector<LanglandsData> enumerate_data(const EnumParams& p);

// Symmetric data on one line of `lines`. Bounds count negative members of
// non-centered pairs (ugly: rho-side segments) and centered segments;
// coefficients satisfy |x| <= bound2/2. max_degree < 0 means unbounded.
struct SymEnumParams {
    LineTable lines;
    int line = 0;
    int bound2 = 4;
    int max_pairs = 3;
    int max_centered = 3;
    int max_degree = -1;
    int exact_degree = -1;  // >= 0 keeps only this degree
};

using SymSink = std::function<void(const SignedSymMultisegment&)>;
void enumerate_symmetric(const SymEnumParams& p, const SymSink& sink);

// The sweep behind the involution and property criteria: for each of the four
// self-dual line kinds (good/bad x integral/half-integral) separately,
// |2x| <= bound2, <= max_pairs pairs, <= max_centered centered segments,
// all sign choices. Bad lines need even centered multiplicities; there the
// centered cap is rounded up to the next even number.
std::vector<SignedSymMultisegment> standard_sweep(int bound2 = 4, int max_pairs = 3, int max_centered = 3);

// Line tables used by the fixtures and sweeps.
LineTable single_line(LineClass cls, Grid grid, const std::string& id = "rho");

// ---- closed forms ------------------------------------------------------------------

enum class Family {
    good_reduced_same,      // n0[0,0] + [-1,1] + ... + [-y0,y0], alternating signs
    good_reduced_opposite,  // [-1/2,1/2] + ... + [-y0,y0], eps(1/2) = -1, alternating
    good_small_opposite,    // c[-1/2,1/2] + n([-1/2,-1/2] + [1/2,1/2])
    good_small_same,        // c0[0,0] + c1[-1,1] + t([-1,0]+[0,1]) + n([-1,-1]+[1,1])
    good_top_same,          // ladders [y,y] under a centered tower up to e >= 2
    good_top_opposite,      // ladders [y,y] under a centered tower, half-integral
    bad_small_same,         // c[-1/2,1/2] + n(...), c even
    bad_small_opposite,     // c0[0,0] + c1[-1,1] + t(...) + n(...), c0, c1 even
};

const char* to_string(Family f);
std::vector<Family> all_families();

struct FixtureCase {
    Family family;
    std::string params;  // human-readable parameter tuple
    SignedSymMultisegment input;
};

// Every parameter tuple with counters <= max_counter satisfying the family's hypotheses.
std::vector<FixtureCase> family_fixtures(Family f, int max_counter = 6);

// If s (supported on one line) matches a family, its closed-form dual.
std::optional<SignedSymMultisegment> closed_form_dual(const SignedSymMultisegment& s);
std::optional<Family> match_family(const SignedSymMultisegment& s);

// ---- inverse derivative --------------------------------------------------------------

// All s on `line` with coefficients |x| <= bound, equal to target off the line,
// whose x-derivative (on `side` for ugly pairs) is (target, k). Returns the unique
// hit; throws InvariantError on two hits. k = 0 returns target itself.
std::optional<SignedSymMultisegment> inverse_derivative_search(const SignedSymMultisegment& target, int line,
                                                               HalfInt x, int k, int bound, int side = 0);

// ---- property suites -----------------------------------------------------------------

using AdFn = std::function<SignedSymMultisegment(const SignedSymMultisegment&)>;

enum class Suite { involution, invariants, commutation, closed_form, roundtrip, ugly };

const char* to_string(Suite s);
std::optional<Suite> suite_from_string(const std::string& name);
std::vector<Suite> all_suites();

struct PropertyResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string counterexample;  // first failure, empty if none
};

struct AppendixStats {
    std::size_t samples = 0;
    std::size_t emax_checked = 0;
    std::size_t emax_violations = 0;
    // smallest beginning of the dual against min{min b(n), -max (a-1)/2}
    std::size_t first_begin_checked = 0;
    std::size_t first_begin_hits = 0;
    // same with the dimension a itself in place of (a-1)/2
    std::size_t first_begin_literal_hits = 0;
};

struct Report {
    std::vector<PropertyResult> properties;
    std::optional<AppendixStats> appendix;
    std::size_t inputs = 0;
    bool all_pass() const;
    const PropertyResult* find(const std::string& name) const;
};

struct RunOptions {
    std::vector<Suite> suites;  // empty means all
    AdFn ad;                    // empty means ad_symm; tests inject faults here
    unsigned threads = 0;       // 0 means hardware concurrency
};

Report run_properties(const std::vector<SignedSymMultisegment>& inputs, const RunOptions& opt = {});

// GL-side suites. Exhaustive (m^t)^t = m over multisegments on one line with
// coefficients in [-bound, bound] and at most max_segments segments.
PropertyResult check_mw_involution(int bound = 3, int max_segments = 6);

// Random instances: containing_count(m^t, D) == kz_capacity(m, D) for every
// segment D inside the support.
PropertyResult check_kz_identity(std::size_t instances = 1000, int max_segments = 8, int bound = 5,
                                 std::uint64_t seed = 1);

// Ugly pairs: ad_line equals the transpose of the rho side plus its dual.
PropertyResult check_ugly_reduction(int bound = 3, int max_segments = 4);

// e_max preservation and the first-beginning statistics over Langlands data.
AppendixStats appendix_stats(const std::vector<LanglandsData>& data, const AdFn& ad = {});
// Streaming form: add one (input, dual) pair.
void appendix_accumulate(AppendixStats& st, const LanglandsData& in, const LanglandsData& dual);

// The maximum-coefficient quantity preserved under duality,
// min{min b(n), -max (a-1)/2}; 0 for the empty datum.
HalfInt appendix_quantity(const LanglandsData& d);

}  // namespace azd
