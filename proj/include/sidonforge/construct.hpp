#pragma once

#include <optional>
#include <string>

#include "sidonforge/repfn.hpp"

namespace sidonforge {

// floor(k^2 + 2 k^(3/2)), the representation cap targeted by a k-parabola
// union, computed in exact integer arithmetic.
u64 parabola_cap(u64 k);

// A_u = {(x, x^2 / u) : x in Z_p} in Z_p x Z_p; exactly p elements.
// Rejects u == 0 mod p.
SidonSet parabola_set(u64 p, u64 u);

// Number of (a1, a2) in A_u x A_v with a1 + a2 = x. For u+v != 0 mod p this
// is the closed form 1 + (D/p) with D = 4uv((u+v)b - a^2); the degenerate
// u+v == 0 case collapses to a linear equation and is counted directly (it
// can return p at (0,0)).
u64 pair_rep_count(u64 u, u64 v, const GroupElement& x, u64 p);
u64 pair_rep_count(const LegendreTable& leg, u64 u, u64 v, u64 a, u64 b);

// S_t = sum over |l| <= k-1 of | sum_{i+j=k+1+l, 1<=i,j<=k} ((t+i)(t+j) / p) |,
// evaluated exactly from Legendre symbols.
u64 character_sum_S(u64 p, u64 k, u64 t);
u64 character_sum_S(const LegendreTable& leg, u64 k, u64 t);

struct ParabolaUnion {
    SidonSet set;    // in Z_p x Z_p, k(p-1)+1 elements
    u64 p = 0;
    u64 k = 0;
    u64 t = 0;       // shift actually used
    u64 s_t = 0;     // character sum at that shift
    u64 nominal_cap = 0; // parabola_cap(k)
    u64 achieved_g = 0;  // exact max of the ordered representation function
};

// Union of the k parabolas A_{t+1}..A_{t+k}. When no shift is given, t is
// chosen to minimize S_t over 0 <= t <= p-1-k (smallest t on ties). The
// returned cap is always the exactly computed one; the nominal bound only
// holds for large p.
ParabolaUnion build_parabola_union(u64 p, u64 k, std::optional<u64> given_t = std::nullopt);

// Spread A from Z_p x Z_p into Z_{p^2 s}: every (a, b) contributes the s
// values a + c p + b s p, 0 <= c < s. |A'| = |A| * s; if A has max rep g,
// A' has max rep at most g (s+1).
SidonSet project_to_cyclic(const SidonSet& A, u64 s);

struct CyclicConstruction {
    SidonSet set;          // in Z_{p^2 s}
    u64 p = 0, k = 0, s = 0, t = 0;
    u64 nominal_cap = 0;   // parabola_cap(k) * (s+1)
    u64 source_achieved_g = 0; // exact cap of the parabola union
    u64 achieved_g = 0;        // exact cap of the projected set
    double density = 0.0;      // |A| / sqrt(nominal_cap * q)
};

// build_parabola_union (best shift) composed with project_to_cyclic,
// everything re-verified exactly.
CyclicConstruction build_cyclic_gsidon(u64 k, u64 s, u64 p);

struct PastingParams {
    SidonSet a_int; // integer pattern, interval kind, min element 0
    SidonSet c_mod; // cyclic kind mod q; lifted to [1, q] with 0 -> q
    u64 g1 = 0;     // verified cap of a_int
    u64 g2 = 0;     // verified cap of c_mod
};

struct PasteResult {
    SidonSet set;       // in [1, q(a_k + 1)], interval kind
    u64 cap = 0;        // g1 * g2
    u64 achieved_g = 0; // exact max rep when verified
    bool exact_verified = false;
};

// B = union over a in A of (C + q a). |B| = |A| |C|; B is g1 g2-Sidon.
// Inputs are re-verified at their stated caps (ClaimFailed otherwise);
// the result is verified exactly when the instance is desk-sized.
PasteResult paste(const PastingParams& params);

// Classical Sidon set of size p in Z_{p^2 - 1} (powers of a primitive element
// of GF(p^2) landing on the line through the generator), verified exactly.
SidonSet bose_sidon_baseline(u64 p);

struct AssembleResult {
    SidonSet set;       // subset of [1, N], interval kind
    u64 g1 = 0, g2 = 0; // chosen decomposition, g1*g2 <= g
    u64 cap = 0;
    u64 achieved_g = 0;
    bool exact_verified = false;
    u64 footprint = 0;  // q * (max pattern element + 1)
    double density = 0.0; // |B| / sqrt(g N)
    std::string pattern_desc;
    std::string cyclic_desc;
};

// End-to-end integer construction: pick a cyclic g2-Sidon set C mod q and an
// integer g1 pattern A with g1 g2 <= g and q (max A + 1) <= N, maximizing
// |A| |C| over the finite menu, then paste. eps in (0,1) filters cyclic
// candidates by density |C|/sqrt(g2 q) >= 1 - eps. Throws
// InfeasibleParameters when nothing fits.
AssembleResult assemble_integer_gsidon(u64 g, u64 N, double eps);

} // namespace sidonforge
