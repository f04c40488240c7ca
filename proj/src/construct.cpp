#include "sidonforge/construct.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace sidonforge {

namespace {

u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace

u64 parabola_cap(u64 k) {
    // floor(k^2 + 2 k^(3/2)) = k^2 + floor(sqrt(4 k^3))
    return k * k + isqrt(4 * k * k * k);
}

SidonSet parabola_set(u64 p, u64 u) {
    GroupSpec g = GroupSpec::product_pp(p);
    if (u % p == 0) fail(Errc::InvalidParameter, "parabola_set: u must be nonzero mod p");
    u64 inv_u = mod_inverse(static_cast<i64>(u % p), p);
    std::vector<std::pair<u64, u64>> pts;
    pts.reserve(p);
    for (u64 x = 0; x < p; ++x)
        pts.emplace_back(x, (x * x % p) * inv_u % p);
    SidonSet s = SidonSet::from_pairs(g, pts);
    assert(s.size() == p);
    return s;
}

u64 pair_rep_count(const LegendreTable& leg, u64 u, u64 v, u64 a, u64 b) {
    u64 p = leg.prime();
    u %= p; v %= p; a %= p; b %= p;
    if (u == 0 || v == 0) fail(Errc::InvalidParameter, "pair_rep_count: u, v must be nonzero mod p");
    u64 w = u + v >= p ? u + v - p : u + v;
    if (w == 0) {
        // Quadratic collapses to 2a x = a^2 - b v; count solutions directly.
        if (a != 0) return 1;
        return b == 0 ? p : 0;
    }
    u64 t1 = 4 * u % p * v % p;
    u64 t2 = (w * b % p + p - a * a % p) % p;
    u64 disc = t1 * t2 % p;
    return static_cast<u64>(1 + leg(disc));
}

u64 pair_rep_count(u64 u, u64 v, const GroupElement& x, u64 p) {
    if (x.group.kind() != GroupKind::ProductPP || x.group.param() != p)
        fail(Errc::MixedGroups, "pair_rep_count: element is not in Z_p x Z_p for this p");
    LegendreTable leg(p);
    return pair_rep_count(leg, u, v, x.a, x.b);
}

u64 character_sum_S(const LegendreTable& leg, u64 k, u64 t) {
    u64 p = leg.prime();
    if (k < 1 || t > p - 1 - k)
        fail(Errc::InvalidParameter, "character_sum_S: need 1 <= k and t <= p-1-k");
    u64 total = 0;
    for (u64 m = 2; m <= 2 * k; ++m) { // m = i + j = k + 1 + l, |l| <= k-1
        i64 inner = 0;
        u64 lo = m > k ? m - k : 1;
        u64 hi = std::min(k, m - 1);
        for (u64 i = lo; i <= hi; ++i) {
            u64 j = m - i;
            inner += leg((t + i) * (t + j));
        }
        total += static_cast<u64>(inner < 0 ? -inner : inner);
    }
    return total;
}

u64 character_sum_S(u64 p, u64 k, u64 t) {
    LegendreTable leg(p);
    return character_sum_S(leg, k, t);
}

ParabolaUnion build_parabola_union(u64 p, u64 k, std::optional<u64> given_t) {
    GroupSpec g = GroupSpec::product_pp(p);
    if (k < 1) fail(Errc::InvalidParameter, "build_parabola_union: need k >= 1");
    if (k >= p) fail(Errc::KTooLarge, "build_parabola_union: need k < p");

    LegendreTable leg(p);
    u64 t;
    u64 s_t;
    if (given_t) {
        t = *given_t;
        if (t > p - 1 - k)
            fail(Errc::InvalidParameter, "build_parabola_union: shift t out of range [0, p-1-k]");
        s_t = character_sum_S(leg, k, t);
    } else {
        t = 0;
        s_t = character_sum_S(leg, k, 0);
        for (u64 cand = 1; cand <= p - 1 - k; ++cand) {
            u64 s = character_sum_S(leg, k, cand);
            if (s < s_t) { s_t = s; t = cand; }
        }
    }

    std::vector<std::pair<u64, u64>> pts;
    pts.reserve(k * p);
    for (u64 u = t + 1; u <= t + k; ++u) {
        u64 inv_u = mod_inverse(static_cast<i64>(u % p), p);
        for (u64 x = 0; x < p; ++x)
            pts.emplace_back(x, (x * x % p) * inv_u % p);
    }
    SidonSet set = SidonSet::from_pairs(g, pts);
    assert(set.size() == k * (p - 1) + 1); // parabolas intersect only at (0,0)

    u64 achieved = rep_profile_direct(set).max_r;
    set.claimed_g = achieved;

    return ParabolaUnion{std::move(set), p, k, t, s_t, parabola_cap(k), achieved};
}

SidonSet project_to_cyclic(const SidonSet& A, u64 s) {
    if (A.group.kind() != GroupKind::ProductPP)
        fail(Errc::GroupUnsupported, "project_to_cyclic: source must live in Z_p x Z_p");
    if (s < 1) fail(Errc::InvalidParameter, "project_to_cyclic: need s >= 1");
    u64 p = A.group.param();
    u64 q = p * p * s;
    std::vector<u64> vals;
    vals.reserve(A.size() * s);
    for (const GroupElement& e : A.elements)
        for (u64 c = 0; c < s; ++c)
            vals.push_back(e.a + c * p + e.b * s * p);
    SidonSet out = SidonSet::from_values(GroupSpec::cyclic(q), vals);
    assert(out.size() == A.size() * s); // (a, b, c) -> a + cp + bsp is injective
    return out;
}

CyclicConstruction build_cyclic_gsidon(u64 k, u64 s, u64 p) {
    ParabolaUnion pu = build_parabola_union(p, k);
    SidonSet proj = project_to_cyclic(pu.set, s);
    u64 achieved = rep_profile(proj).max_r;
    proj.claimed_g = achieved;
    u64 nominal = parabola_cap(k) * (s + 1);
    u64 q = proj.group.param();
    double density = static_cast<double>(proj.size()) /
                     std::sqrt(static_cast<double>(nominal) * static_cast<double>(q));
    return CyclicConstruction{std::move(proj), p, k, s, pu.t, nominal, pu.achieved_g, achieved, density};
}

namespace {

constexpr u64 kExactVerifyFootprint = 2'000'000;
constexpr u64 kExactVerifyPairBudget = 60'000'000;

bool desk_verifiable(u64 footprint, u64 set_size) {
    return footprint <= kExactVerifyFootprint &&
           set_size * set_size <= kExactVerifyPairBudget;
}

} // namespace

PasteResult paste(const PastingParams& params) {
    const SidonSet& A = params.a_int;
    const SidonSet& C = params.c_mod;
    if (A.group.kind() != GroupKind::IntegerInterval)
        fail(Errc::InvalidGroup, "paste: integer pattern must be interval kind");
    if (C.group.kind() != GroupKind::Cyclic)
        fail(Errc::InvalidGroup, "paste: modular set must be cyclic kind");
    if (A.elements.empty() || C.elements.empty())
        fail(Errc::InvalidParameter, "paste: both input sets must be nonempty");
    if (A.elements.front().a != 0)
        fail(Errc::NormalizationError, "paste: integer pattern must start at 0");

    if (VerifyResult r = verify_g_sidon(A, params.g1, Flavor::Ordered); !r)
        fail(Errc::ClaimFailed, "paste: integer pattern exceeds g1 at x=" + std::to_string(r.violating.a));
    if (VerifyResult r = verify_g_sidon(C, params.g2, Flavor::Ordered); !r)
        fail(Errc::ClaimFailed, "paste: modular set exceeds g2 at x=" + std::to_string(r.violating.a));

    u64 q = C.group.param();
    u64 a_max = A.elements.back().a;
    u64 footprint = q * (a_max + 1);

    std::vector<u64> vals;
    vals.reserve(A.size() * C.size());
    for (const GroupElement& a : A.elements)
        for (const GroupElement& c : C.elements) {
            u64 lifted = c.a == 0 ? q : c.a; // residues live in [1, q]
            vals.push_back(lifted + q * a.a);
        }
    SidonSet B = SidonSet::from_values(GroupSpec::interval(footprint), vals);
    assert(B.size() == A.size() * C.size()); // cosets C + q a_i are disjoint

    PasteResult out;
    out.cap = params.g1 * params.g2;
    if (desk_verifiable(footprint, B.size())) {
        out.achieved_g = rep_profile(B).max_r;
        out.exact_verified = true;
    }
    B.claimed_g = out.cap;
    out.set = std::move(B);
    return out;
}

namespace {

// GF(p^2) as x + y w with w^2 = d, d a fixed nonresidue mod p.
struct Fp2 {
    u64 x, y;
};

Fp2 fp2_mul(const Fp2& a, const Fp2& b, u64 p, u64 d) {
    return Fp2{(a.x * b.x + d * (a.y * b.y % p)) % p,
               (a.x * b.y + a.y * b.x) % p};
}

Fp2 fp2_pow(Fp2 base, u64 e, u64 p, u64 d) {
    Fp2 r{1, 0};
    while (e) {
        if (e & 1) r = fp2_mul(r, base, p, d);
        base = fp2_mul(base, base, p, d);
        e >>= 1;
    }
    return r;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    for (u64 f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace

SidonSet bose_sidon_baseline(u64 p) {
    GroupSpec zq = GroupSpec::cyclic(p * p - 1); // validates nothing about p yet
    LegendreTable leg(p);                        // rejects non-prime / even p

    u64 d = 2;
    while (leg(d) != -1) ++d;

    u64 n = p * p - 1;
    std::vector<u64> fs = prime_factors(n);

    // A generator of GF(p^2)* of the form c + w always exists.
    Fp2 theta{0, 1};
    for (u64 c = 0; c < p; ++c) {
        theta = Fp2{c, 1};
        bool primitive = true;
        for (u64 f : fs) {
            Fp2 e = fp2_pow(theta, n / f, p, d);
            if (e.x == 1 && e.y == 0) { primitive = false; break; }
        }
        if (primitive) break;
        if (c + 1 == p)
            fail(Errc::InvalidParameter, "bose_sidon_baseline: no primitive element found");
    }

    // Collect the p exponents i with theta^i - theta in GF(p), i.e. the
    // discrete logs of the line {theta + a : a in GF(p)}.
    std::vector<u64> logs;
    logs.reserve(p);
    Fp2 cur = theta;
    for (u64 i = 1; i < n; ++i) {
        if (cur.y == theta.y) logs.push_back(i);
        cur = fp2_mul(cur, theta, p, d);
    }
    assert(logs.size() == p);

    SidonSet out = SidonSet::from_values(zq, logs);
    out.claimed_g = 2;
    if (VerifyResult r = verify_g_sidon(out, 1, Flavor::Unordered); !r)
        fail(Errc::ClaimFailed, "bose_sidon_baseline: internal construction error");
    return out;
}

namespace {

struct CyclicCandidate {
    SidonSet set;
    u64 q = 0;
    u64 g2 = 0;      // exact verified ordered cap
    double density = 0.0;
    std::string desc;
};

CyclicCandidate finish_candidate(SidonSet set, std::string desc) {
    u64 q = set.group.param();
    u64 g2 = rep_profile(set).max_r;
    set.claimed_g = g2;
    double density = static_cast<double>(set.size()) /
                     std::sqrt(static_cast<double>(g2) * static_cast<double>(q));
    return CyclicCandidate{std::move(set), q, g2, density, std::move(desc)};
}

// Union of two translates of the baseline Sidon set: r <= 2 + 4 + 2 = 8 by
// splitting over the translate pairs, usually less in practice.
std::optional<SidonSet> bose_translate_union(u64 p) {
    SidonSet base = bose_sidon_baseline(p);
    u64 q = base.group.param();
    std::vector<bool> member(q, false);
    for (const GroupElement& e : base.elements) member[e.a] = true;
    for (u64 tau = 1; tau < q; ++tau) {
        bool disjoint = true;
        for (const GroupElement& e : base.elements)
            if (member[(e.a + tau) % q]) { disjoint = false; break; }
        if (!disjoint) continue;
        std::vector<u64> vals;
        vals.reserve(2 * base.size());
        for (const GroupElement& e : base.elements) {
            vals.push_back(e.a);
            vals.push_back((e.a + tau) % q);
        }
        return SidonSet::from_values(base.group, vals);
    }
    return std::nullopt;
}

u64 largest_prime_at_most(u64 x) {
    if (x < 2) return 0;
    for (u64 p = x; p >= 2; --p)
        if (is_prime(p)) return p;
    return 0;
}

constexpr u64 kCandidateQCap = 2'000'000;

} // namespace

AssembleResult assemble_integer_gsidon(u64 g, u64 N, double eps) {
    if (g < 1 || N < 1) fail(Errc::InvalidParameter, "assemble: need g >= 1, N >= 1");
    if (!(eps > 0.0 && eps < 1.0)) fail(Errc::InvalidParameter, "assemble: need eps in (0,1)");

    // Integer pattern menu. Caps are recomputed exactly, nothing is trusted.
    std::vector<std::vector<u64>> raw_patterns;
    for (u64 m = 1; m <= std::min<u64>(g, 24); ++m) {
        std::vector<u64> block(m);
        for (u64 i = 0; i < m; ++i) block[i] = i;
        raw_patterns.push_back(std::move(block));
    }
    const std::vector<std::vector<u64>> extras = {
        {0, 1, 3}, {0, 1, 4, 6}, {0, 1, 4, 9, 11}, {0, 1, 4, 10, 12, 17},
        {0, 1, 4, 10, 18, 23, 25}, {0, 1, 4, 9, 15, 22, 32, 34},
        {0, 1, 5, 12, 25, 27, 35, 41, 44}, {0, 1, 6, 10, 23, 26, 34, 41, 53, 55},
        {0, 1, 2, 4}, {0, 1, 2, 4, 5}, {0, 1, 2, 4, 5, 7},
    };
    raw_patterns.insert(raw_patterns.end(), extras.begin(), extras.end());

    struct Pattern {
        SidonSet set;
        u64 g1;
        u64 span; // max element
        std::string desc;
    };
    std::vector<Pattern> patterns;
    for (const std::vector<u64>& vals : raw_patterns) {
        u64 span = *std::max_element(vals.begin(), vals.end());
        SidonSet s = SidonSet::from_values(GroupSpec::interval(span > 0 ? span : 1), vals);
        u64 g1 = s.size() ? rep_profile(s).max_r : 0;
        if (g1 == 0 || g1 > g) continue;
        std::string desc = "pattern[" + std::to_string(s.size()) + " in 0.." + std::to_string(span) + "]";
        patterns.push_back(Pattern{std::move(s), g1, span, std::move(desc)});
    }

    enum class Cls { Bose, BoseUnion, Parabola, Singleton };
    std::map<std::tuple<int, u64, u64, u64>, std::optional<CyclicCandidate>> cache;

    auto get_candidate = [&](Cls cls, u64 k, u64 s, u64 key) -> const std::optional<CyclicCandidate>& {
        auto it = cache.find({static_cast<int>(cls), k, s, key});
        if (it != cache.end()) return it->second;
        std::optional<CyclicCandidate> cand;
        switch (cls) {
            case Cls::Bose:
                cand = finish_candidate(bose_sidon_baseline(key), "bose(p=" + std::to_string(key) + ")");
                break;
            case Cls::BoseUnion:
                if (std::optional<SidonSet> u = bose_translate_union(key))
                    cand = finish_candidate(std::move(*u), "bose-union(p=" + std::to_string(key) + ")");
                break;
            case Cls::Parabola: {
                CyclicConstruction cc = build_cyclic_gsidon(k, s, key);
                cand = finish_candidate(std::move(cc.set),
                                        "parabola(k=" + std::to_string(k) + ",s=" + std::to_string(s) +
                                        ",p=" + std::to_string(key) + ")");
                break;
            }
            case Cls::Singleton:
                cand = finish_candidate(SidonSet::from_values(GroupSpec::cyclic(key), {0}),
                                        "singleton(q=" + std::to_string(key) + ")");
                break;
        }
        return cache.emplace(std::make_tuple(static_cast<int>(cls), k, s, key), std::move(cand)).first->second;
    };

    struct Choice {
        const Pattern* pattern = nullptr;
        const CyclicCandidate* cyclic = nullptr;
        u64 score = 0;
        u64 footprint = 0;
    } best;

    auto consider = [&](const Pattern& pat, const std::optional<CyclicCandidate>& cand) {
        if (!cand) return;
        if (pat.g1 * cand->g2 > g) return;
        if (cand->density < 1.0 - eps) return;
        u64 footprint = cand->q * (pat.span + 1);
        if (footprint > N) return;
        u64 score = pat.set.size() * cand->set.size();
        if (score > best.score || (score == best.score && footprint < best.footprint)) {
            best = Choice{&pat, &*cand, score, footprint};
        }
    };

    for (const Pattern& pat : patterns) {
        u64 q_budget = std::min(N / (pat.span + 1), kCandidateQCap);
        if (q_budget < 1) continue;

        if (u64 p = largest_prime_at_most(isqrt(q_budget + 1)); p >= 3) {
            if (p * p - 1 <= q_budget) consider(pat, get_candidate(Cls::Bose, 0, 0, p));
            if (8 * pat.g1 <= g) consider(pat, get_candidate(Cls::BoseUnion, 0, 0, p));
        }
        for (u64 k = 1; k <= 4; ++k) {
            // A k-parabola union averages about k^2 representations; slots
            // with k^2 far beyond g cannot verify under the budget.
            if (k * k > 2 * g) break;
            for (u64 s = 1; s <= 3; ++s) {
                u64 p = largest_prime_at_most(isqrt(q_budget / s));
                if (p <= k || p < 3) continue;
                consider(pat, get_candidate(Cls::Parabola, k, s, p));
            }
        }
        consider(pat, get_candidate(Cls::Singleton, 0, 0, q_budget));
    }

    if (!best.pattern)
        fail(Errc::InfeasibleParameters,
             "assemble: no (g1, g2, q) decomposition fits N=" + std::to_string(N) +
             " at g=" + std::to_string(g) + ", eps=" + std::to_string(eps));

    PastingParams pp{best.pattern->set, best.cyclic->set, best.pattern->g1, best.cyclic->g2};
    PasteResult pasted = paste(pp);

    AssembleResult out;
    out.g1 = best.pattern->g1;
    out.g2 = best.cyclic->g2;
    out.cap = pasted.cap;
    out.achieved_g = pasted.achieved_g;
    out.exact_verified = pasted.exact_verified;
    out.footprint = best.footprint;
    out.pattern_desc = best.pattern->desc;
    out.cyclic_desc = best.cyclic->desc;

    std::vector<u64> vals;
    vals.reserve(pasted.set.size());
    for (const GroupElement& e : pasted.set.elements) vals.push_back(e.a);
    out.set = SidonSet::from_values(GroupSpec::interval(N), vals);
    out.set.claimed_g = pasted.set.claimed_g;
    out.density = static_cast<double>(out.set.size()) /
                  std::sqrt(static_cast<double>(g) * static_cast<double>(N));
    return out;
}

} // namespace sidonforge
