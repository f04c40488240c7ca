#include "sidonforge/groups.hpp"

#include <numeric>

namespace sidonforge {

namespace {

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<__uint128_t>(a) * b) % m);
}

} // namespace

u64 mod_pow(u64 base, u64 exp, u64 mod) {
    u64 r = mod > 1 ? 1 : 0;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, mod);
        base = mul_mod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set decides primality for every n < 2^64.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

int legendre(i64 a, u64 p) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p))
        fail(Errc::InvalidGroup, "legendre: modulus must be an odd prime, got " + std::to_string(p));
    i64 m = a % static_cast<i64>(p);
    if (m < 0) m += static_cast<i64>(p);
    if (m == 0) return 0;
    u64 e = mod_pow(static_cast<u64>(m), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

u64 mod_inverse(i64 a, u64 m) {
    if (m == 0) fail(Errc::InvalidGroup, "mod_inverse: zero modulus");
    i64 mm = static_cast<i64>(m);
    i64 r0 = mm, r1 = a % mm;
    if (r1 < 0) r1 += mm;
    i64 t0 = 0, t1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        t0 -= q * t1; std::swap(t0, t1);
    }
    if (r0 != 1)
        fail(Errc::NotInvertible, "mod_inverse: gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
    if (t0 < 0) t0 += mm;
    return static_cast<u64>(t0);
}

LegendreTable::LegendreTable(u64 p) : p_(p), sym_(p, -1) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p))
        fail(Errc::InvalidGroup, "LegendreTable: modulus must be an odd prime, got " + std::to_string(p));
    sym_[0] = 0;
    for (u64 x = 1; x < p; ++x) sym_[mul_mod(x, x, p)] = 1;
}

GroupSpec GroupSpec::cyclic(u64 q) {
    if (q < 1) fail(Errc::InvalidGroup, "cyclic group needs modulus >= 1");
    return GroupSpec(GroupKind::Cyclic, q);
}

GroupSpec GroupSpec::product_pp(u64 p) {
    if (p < 3 || (p & 1) == 0 || !is_prime(p))
        fail(Errc::InvalidGroup, "product group needs an odd prime, got " + std::to_string(p));
    return GroupSpec(GroupKind::ProductPP, p);
}

u64 GroupSpec::order() const {
    switch (kind_) {
        case GroupKind::IntegerInterval: return param_ + 1;
        case GroupKind::Cyclic:          return param_;
        case GroupKind::ProductPP:       return param_ * param_;
    }
    return 0;
}

u64 GroupSpec::sum_domain_size() const {
    return kind_ == GroupKind::IntegerInterval ? 2 * param_ + 1 : order();
}

GroupElement make_element(const GroupSpec& g, u64 value) {
    switch (g.kind()) {
        case GroupKind::IntegerInterval:
            if (value > 2 * g.param())
                fail(Errc::InvalidGroup, "interval element " + std::to_string(value) + " beyond extended range");
            return GroupElement{g, value, 0, value > g.param()};
        case GroupKind::Cyclic:
            return GroupElement{g, value % g.param(), 0, false};
        case GroupKind::ProductPP:
            fail(Errc::InvalidGroup, "product group element needs two coordinates");
    }
    fail(Errc::InvalidGroup, "bad group kind");
}

GroupElement make_element(const GroupSpec& g, u64 a, u64 b) {
    if (g.kind() != GroupKind::ProductPP)
        fail(Errc::InvalidGroup, "pair element only valid in a product group");
    u64 p = g.param();
    return GroupElement{g, a % p, b % p, false};
}

u64 element_index(const GroupSpec& g, const GroupElement& x) {
    return g.kind() == GroupKind::ProductPP ? x.a * g.param() + x.b : x.a;
}

GroupElement element_at(const GroupSpec& g, u64 index) {
    if (index >= g.sum_domain_size())
        fail(Errc::InvalidGroup, "element index out of range");
    if (g.kind() == GroupKind::ProductPP)
        return GroupElement{g, index / g.param(), index % g.param(), false};
    return GroupElement{g, index, 0, g.kind() == GroupKind::IntegerInterval && index > g.param()};
}

bool contains(const GroupSpec& g, const GroupElement& x) {
    if (!(x.group == g)) return false;
    switch (g.kind()) {
        case GroupKind::IntegerInterval: return x.a <= g.param() && x.b == 0 && !x.extended;
        case GroupKind::Cyclic:          return x.a < g.param() && x.b == 0;
        case GroupKind::ProductPP:       return x.a < g.param() && x.b < g.param();
    }
    return false;
}

GroupElement add(const GroupElement& x, const GroupElement& y, const GroupSpec& g) {
    if (!(x.group == g) || !(y.group == g))
        fail(Errc::MixedGroups, "add: operands belong to different group specs");
    switch (g.kind()) {
        case GroupKind::IntegerInterval: {
            u64 s = x.a + y.a;
            return GroupElement{g, s, 0, s > g.param()};
        }
        case GroupKind::Cyclic: {
            u64 q = g.param();
            u64 s = x.a + y.a;
            if (s >= q) s -= q;
            return GroupElement{g, s, 0, false};
        }
        case GroupKind::ProductPP: {
            u64 p = g.param();
            u64 sa = x.a + y.a;
            u64 sb = x.b + y.b;
            if (sa >= p) sa -= p;
            if (sb >= p) sb -= p;
            return GroupElement{g, sa, sb, false};
        }
    }
    fail(Errc::InvalidGroup, "bad group kind");
}

} // namespace sidonforge
