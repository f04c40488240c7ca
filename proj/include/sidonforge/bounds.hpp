#pragma once

#include <optional>

#include "sidonforge/repfn.hpp"

namespace sidonforge {

// Right side of the refined counting bound for a set in a group of order q
// whose representation function is <= k off 2A and <= k+l on 2A:
//   sqrt((k-1) q) + 1 + l/2 + l(l+1) / (2(k-1)).
// Callers compare |A| < bound. Requires k >= 2, l >= 0.
double bound_section2(u64 q, u64 k, u64 l);

// Case table dispatching to bound_section2 for a g-Sidon (weak=false) or
// weak g-Sidon (weak=true) set in a group of order q:
//   g even:           (k, l) = (g, 0)
//   g odd:            (k, l) = (g-1, 1)
//   weak, q even:     (k, l) = (g, 2)
//   weak, q odd:      (k, l) = (g, 1)
double bound_corollaries(u64 q, u64 g, bool weak, bool q_even);

// Closed-form upper bounds with applicability flags; entries are unset when
// the bound does not apply to the given parameters.
struct BoundReport {
    std::optional<double> trivial;        // sqrt(g q) cyclic / sqrt(2 g n) interval
    std::optional<double> section2;       // corollary dispatch of the refined bound
    std::optional<double> corollary_even; // sqrt((g-1) q) + 1
    std::optional<double> corollary_odd;  // sqrt((g-2) q) + 3/2 + 1/(g-2)
    std::optional<double> lindstrom;      // sqrt(n) + n^(1/4) + 1       (g = 2)
    std::optional<double> ruzsa_weak;     // sqrt(n) + 4 n^(1/4) + 11    (g = 3)

    // Smallest applicable upper bound, or +inf when none applies.
    double tightest() const;
};

BoundReport bound_integer_classics(u64 n, u64 g);
BoundReport bound_cyclic(u64 q, u64 g);

struct SearchLimits {
    std::optional<u64> ceiling; // override for the instance-size ceiling
};

struct SearchResult {
    u64 optimum = 0;
    SidonSet witness;
    u64 nodes = 0; // search tree size, for diagnostics
};

// Largest g-Sidon subset of {1..n} (flavor-capped), by depth-first search
// with incremental representation counters and closed-form pruning caps.
// The witness is re-verified before returning. Default ceiling: 60 for
// g <= 2, shrinking for larger g. Throws CeilingExceeded beyond it.
SearchResult exact_beta(u64 n, u64 g, Flavor flavor, const SearchLimits& limits = {});

// Largest g-Sidon subset of Z_q; translation invariance pins 0 into the set.
// Default ceiling 30.
SearchResult exact_alpha(u64 q, u64 g, Flavor flavor, const SearchLimits& limits = {});

u64 default_beta_ceiling(u64 g);
u64 default_alpha_ceiling(u64 g);

} // namespace sidonforge
