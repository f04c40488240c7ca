#pragma once

#include <compare>
#include <vector>

#include "sidonforge/common.hpp"

namespace sidonforge {

// Ambient additive structures: the integer interval {0..n} (sums spill into
// {0..2n}), the cyclic group Z_q, and the product Z_p x Z_p for an odd prime p.
enum class GroupKind { IntegerInterval, Cyclic, ProductPP };

class GroupSpec {
public:
    // Trivial one-point interval; placeholder for default-constructed values.
    GroupSpec() : kind_(GroupKind::IntegerInterval), param_(0) {}

    static GroupSpec interval(u64 n) { return GroupSpec(GroupKind::IntegerInterval, n); }
    static GroupSpec cyclic(u64 q);     // requires q >= 1
    static GroupSpec product_pp(u64 p); // requires p odd prime

    GroupKind kind() const { return kind_; }
    // The defining parameter: n for intervals, q for Z_q, p for Z_p x Z_p.
    u64 param() const { return param_; }

    u64 order() const;
    // Number of distinct values a sum of two elements can take; intervals get
    // the extended range {0..2n}, the finite groups are closed under +.
    u64 sum_domain_size() const;

    bool operator==(const GroupSpec&) const = default;

private:
    GroupSpec(GroupKind k, u64 p) : kind_(k), param_(p) {}

    GroupKind kind_;
    u64 param_;
};

// A canonical element of some GroupSpec. Scalar kinds use `a`; ProductPP uses
// the pair (a, b). Interval sums beyond n are representable and flagged
// `extended` so representation profiles can index them.
struct GroupElement {
    GroupSpec group;
    u64 a = 0;
    u64 b = 0;
    bool extended = false;

    bool operator==(const GroupElement& o) const {
        return group == o.group && a == o.a && b == o.b;
    }
    // Canonical order: lexicographic on (a, b). Only meaningful within one group.
    bool operator<(const GroupElement& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
};

// Element construction / indexing on a GroupSpec. `make_element` canonicalizes
// (reduces mod q or p); interval values beyond n are accepted as extended sums
// up to 2n. `element_index` linearizes into [0, sum_domain_size()).
GroupElement make_element(const GroupSpec& g, u64 value);
GroupElement make_element(const GroupSpec& g, u64 a, u64 b);
u64 element_index(const GroupSpec& g, const GroupElement& x);
GroupElement element_at(const GroupSpec& g, u64 index);
bool contains(const GroupSpec& g, const GroupElement& x);

// Componentwise/modular sum, canonicalized. Interval sums may exceed n and
// come back flagged extended. Throws MixedGroups if x or y belongs to a
// different spec than g.
GroupElement add(const GroupElement& x, const GroupElement& y, const GroupSpec& g);

// Deterministic for all 64-bit inputs (Miller-Rabin with a fixed base set).
bool is_prime(u64 n);

// Legendre symbol (a/p) via Euler's criterion. Rejects even or composite p.
int legendre(i64 a, u64 p);

// Modular inverse; throws NotInvertible when gcd(a, m) != 1.
u64 mod_inverse(i64 a, u64 m);

u64 mod_pow(u64 base, u64 exp, u64 mod);

// Dense table of Legendre symbols mod p, built by marking squares (an
// independent route from Euler's criterion; the two are cross-checked in
// tests). Used in the inner loops of the parabola machinery.
class LegendreTable {
public:
    explicit LegendreTable(u64 p);

    u64 prime() const { return p_; }
    int operator()(u64 x) const { return sym_[x % p_]; }

private:
    u64 p_;
    std::vector<i8> sym_;
};

} // namespace sidonforge
