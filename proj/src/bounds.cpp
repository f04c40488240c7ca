#include "sidonforge/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sidonforge {

double bound_section2(u64 q, u64 k, u64 l) {
    if (k < 2) fail(Errc::InvalidParameter, "bound_section2: need k >= 2");
    if (q < 1) fail(Errc::InvalidParameter, "bound_section2: need q >= 1");
    double kd = static_cast<double>(k), ld = static_cast<double>(l);
    return std::sqrt((kd - 1.0) * static_cast<double>(q)) + 1.0 + ld / 2.0 +
           ld * (ld + 1.0) / (2.0 * (kd - 1.0));
}

double bound_corollaries(u64 q, u64 g, bool weak, bool q_even) {
    if (g < 2) fail(Errc::InvalidParameter, "bound_corollaries: need g >= 2");
    if (weak) return bound_section2(q, g, q_even ? 2 : 1);
    if (g % 2 == 0) return bound_section2(q, g, 0);
    return bound_section2(q, g - 1, 1);
}

double BoundReport::tightest() const {
    double m = std::numeric_limits<double>::infinity();
    for (const std::optional<double>& b :
         {trivial, section2, corollary_even, corollary_odd, lindstrom, ruzsa_weak})
        if (b) m = std::min(m, *b);
    return m;
}

BoundReport bound_integer_classics(u64 n, u64 g) {
    if (n < 1) fail(Errc::InvalidParameter, "bound_integer_classics: need n >= 1");
    BoundReport rep;
    double nd = static_cast<double>(n);
    rep.trivial = std::sqrt(2.0 * static_cast<double>(g) * nd);
    if (g == 2) rep.lindstrom = std::sqrt(nd) + std::pow(nd, 0.25) + 1.0;
    if (g == 3) rep.ruzsa_weak = std::sqrt(nd) + 4.0 * std::pow(nd, 0.25) + 11.0;
    return rep;
}

BoundReport bound_cyclic(u64 q, u64 g) {
    BoundReport rep;
    rep.trivial = std::sqrt(static_cast<double>(g) * static_cast<double>(q));
    if (g >= 2) {
        rep.section2 = bound_corollaries(q, g, false, q % 2 == 0);
        if (g % 2 == 0) rep.corollary_even = rep.section2;
        else rep.corollary_odd = rep.section2;
    }
    return rep;
}

u64 default_beta_ceiling(u64 g) {
    if (g <= 2) return 60;
    u64 shrink = 6 * (g - 2);
    return shrink >= 36 ? 24 : 60 - shrink;
}

u64 default_alpha_ceiling(u64) { return 30; }

namespace {

// Upper bound b on |A| turned into an admissible integer cap.
u64 floor_cap(double b, u64 hard_max) {
    if (!std::isfinite(b)) return hard_max;
    u64 cap = static_cast<u64>(std::max(0.0, std::floor(b)));
    return std::min(cap, hard_max);
}

struct Searcher {
    bool cyclic = false;
    u64 mod = 0; // q for cyclic groups
    u64 g = 0;
    Flavor flavor = Flavor::Ordered;
    std::vector<u64> cand;
    std::vector<u64> r, t;
    std::vector<u64> chosen, best;
    u64 stop_at = 0;
    u64 nodes = 0;
    bool stop = false;

    u64 sum_index(u64 a, u64 b) const {
        u64 s = a + b;
        if (cyclic && s >= mod) s -= mod;
        return s;
    }

    bool ok_at(u64 x) const {
        switch (flavor) {
            case Flavor::Ordered:    return r[x] <= g;
            case Flavor::Restricted: return r[x] - t[x] <= g;
            case Flavor::Unordered:  return (r[x] + t[x]) / 2 <= g;
        }
        return false;
    }

    void apply(u64 c, bool add) {
        // chosen must not contain c while applying
        for (u64 a : chosen) {
            u64 x = sum_index(a, c);
            if (add) r[x] += 2; else r[x] -= 2;
        }
        u64 x = sum_index(c, c);
        if (add) { r[x] += 1; t[x] += 1; } else { r[x] -= 1; t[x] -= 1; }
    }

    bool try_add(u64 c) {
        apply(c, true);
        bool ok = ok_at(sum_index(c, c));
        if (ok)
            for (u64 a : chosen)
                if (!ok_at(sum_index(a, c))) { ok = false; break; }
        if (!ok) { apply(c, false); return false; }
        chosen.push_back(c);
        return true;
    }

    void remove_last() {
        u64 c = chosen.back();
        chosen.pop_back();
        apply(c, false);
    }

    void dfs(u64 idx) {
        ++nodes;
        if (chosen.size() > best.size()) {
            best = chosen;
            if (best.size() >= stop_at) { stop = true; return; }
        }
        if (idx == cand.size() || stop) return;
        if (chosen.size() + (cand.size() - idx) <= best.size()) return;
        if (try_add(cand[idx])) {
            dfs(idx + 1);
            remove_last();
            if (stop) return;
        }
        dfs(idx + 1);
    }
};

// Admissible ordered-flavor cap for pruning: a flavor-g set always obeys the
// ordered bound at g+2 (restricted) or 2g (unordered).
u64 ordered_equivalent_g(u64 g, Flavor flavor) {
    switch (flavor) {
        case Flavor::Ordered:    return g;
        case Flavor::Restricted: return g + 2;
        case Flavor::Unordered:  return 2 * g;
    }
    return g;
}

SearchResult finish_search(Searcher& s, const GroupSpec& group, u64 g, Flavor flavor) {
    SidonSet witness = SidonSet::from_values(group, s.best);
    witness.claimed_g = g;
    witness.flavor = flavor;
    if (VerifyResult v = verify_g_sidon(witness, g, flavor); !v)
        fail(Errc::ClaimFailed, "exact search produced an invalid witness"); // unreachable
    return SearchResult{s.best.size(), std::move(witness), s.nodes};
}

} // namespace

SearchResult exact_beta(u64 n, u64 g, Flavor flavor, const SearchLimits& limits) {
    if (n < 1 || g < 1) fail(Errc::InvalidParameter, "exact_beta: need n >= 1 and g >= 1");
    u64 ceiling = limits.ceiling.value_or(default_beta_ceiling(g));
    if (n > ceiling)
        fail(Errc::CeilingExceeded, "exact_beta: n=" + std::to_string(n) +
                                    " exceeds ceiling " + std::to_string(ceiling));

    Searcher s;
    s.g = g;
    s.flavor = flavor;
    s.r.assign(2 * n + 1, 0);
    s.t.assign(2 * n + 1, 0);
    s.cand.resize(n);
    for (u64 i = 0; i < n; ++i) s.cand[i] = i + 1;

    // floor() of an upper bound (strict or inclusive) is always admissible.
    u64 ge = ordered_equivalent_g(g, flavor);
    s.stop_at = std::min(floor_cap(bound_integer_classics(n, ge).tightest(), n), n);

    s.dfs(0);
    return finish_search(s, GroupSpec::interval(n), g, flavor);
}

SearchResult exact_alpha(u64 q, u64 g, Flavor flavor, const SearchLimits& limits) {
    if (q < 1 || g < 1) fail(Errc::InvalidParameter, "exact_alpha: need q >= 1 and g >= 1");
    u64 ceiling = limits.ceiling.value_or(default_alpha_ceiling(g));
    if (q > ceiling)
        fail(Errc::CeilingExceeded, "exact_alpha: q=" + std::to_string(q) +
                                    " exceeds ceiling " + std::to_string(ceiling));

    Searcher s;
    s.cyclic = true;
    s.mod = q;
    s.g = g;
    s.flavor = flavor;
    s.r.assign(q, 0);
    s.t.assign(q, 0);
    s.cand.resize(q - 1);
    for (u64 i = 0; i + 1 < q; ++i) s.cand[i] = i + 1;

    u64 ge = ordered_equivalent_g(g, flavor);
    double cap = std::sqrt(static_cast<double>(ge) * static_cast<double>(q));
    if (ge >= 2) cap = std::min(cap, bound_corollaries(q, ge, false, q % 2 == 0));
    s.stop_at = floor_cap(cap, q);

    // Translation invariance: any nonempty optimum can be shifted onto 0.
    bool seeded = s.try_add(0);
    if (seeded) s.best = s.chosen;
    s.dfs(0);
    return finish_search(s, GroupSpec::cyclic(q), g, flavor);
}

} // namespace sidonforge
