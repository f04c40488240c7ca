#pragma once

#include <optional>
#include <vector>

#include "sidonforge/groups.hpp"

namespace sidonforge {

// The three representation-count conventions over a set A:
//   Ordered     r(x)  = #{(a1,a2) in A^2 : a1+a2 = x}
//   Restricted  r'(x) = same with a1 != a2
//   Unordered   r*(x) = same with (a1,a2) ~ (a2,a1) identified
// They satisfy r*(x) = r(x) - r'(x)/2 and r'(x) <= r(x) <= 2 r*(x).
enum class Flavor { Ordered, Restricted, Unordered };

const char* flavor_name(Flavor f);

// A finite subset of a GroupSpec, kept strictly sorted, with an optional
// claimed cap on the chosen flavor's representation function.
struct SidonSet {
    GroupSpec group;
    std::vector<GroupElement> elements;
    std::optional<u64> claimed_g;
    Flavor flavor = Flavor::Ordered;

    u64 size() const { return elements.size(); }

    // Canonicalize, sort, deduplicate. Scalar values for intervals/Z_q,
    // coordinate pairs for products. Interval values must lie in [0, n].
    static SidonSet from_values(const GroupSpec& g, std::vector<u64> values);
    static SidonSet from_pairs(const GroupSpec& g, const std::vector<std::pair<u64, u64>>& pairs);
};

// Exact counts of all three flavors over the sum domain, plus max statistics.
// Intervals are indexed over the extended range {0..2n}.
struct RepProfile {
    GroupSpec domain;
    std::vector<u64> r;
    std::vector<u64> r_restricted;
    std::vector<u64> r_unordered;
    u64 max_r = 0;
    u64 max_r_restricted = 0;
    u64 max_r_unordered = 0;
    GroupElement argmax; // smallest x attaining max_r

    u64 max_for(Flavor f) const;
    const std::vector<u64>& counts_for(Flavor f) const;
    u64 at(const GroupElement& x) const { return r[element_index(domain, x)]; }
};

// Pair-enumeration engine: exact for every group kind, O(|A|^2).
RepProfile rep_profile_direct(const SidonSet& A);

// Convolution engine: squares the 0/1 indicator sequence with an FFT (linear
// convolution for intervals, folded for Z_q) and rounds back to exact integer
// counts. Identical output contract to rep_profile_direct. Throws
// GroupUnsupported for products and PrecisionOverflow if exact rounding
// cannot be guaranteed.
RepProfile rep_profile_fft(const SidonSet& A);

// Direct for products and small sets, FFT for large interval/cyclic sets.
RepProfile rep_profile(const SidonSet& A);

struct VerifyResult {
    bool ok = true;
    GroupElement violating; // smallest violating x when !ok
    u64 count = 0;

    explicit operator bool() const { return ok; }
};

// ok iff the chosen flavor's representation function is <= g everywhere.
VerifyResult verify_g_sidon(const SidonSet& A, u64 g, Flavor flavor);

// Difference counts d(x) = #{(a1,a2) : a1 - a2 = x}. Cyclic: indexed by the
// residue; interval: differences live in [-n, n], addressed via at().
struct DiffProfile {
    GroupSpec group;
    std::vector<u64> counts;

    u64 at(i64 delta) const;
};

DiffProfile difference_profile(const SidonSet& A);

} // namespace sidonforge
