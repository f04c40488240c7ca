#include "sidonforge/repfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>

#include <unsupported/Eigen/FFT>

namespace sidonforge {

const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Ordered:    return "ordered";
        case Flavor::Restricted: return "restricted";
        case Flavor::Unordered:  return "unordered";
    }
    return "?";
}

SidonSet SidonSet::from_values(const GroupSpec& g, std::vector<u64> values) {
    if (g.kind() == GroupKind::ProductPP)
        fail(Errc::InvalidGroup, "from_values: product group needs coordinate pairs");
    SidonSet s{g, {}, std::nullopt, Flavor::Ordered};
    s.elements.reserve(values.size());
    for (u64 v : values) {
        if (g.kind() == GroupKind::IntegerInterval && v > g.param())
            fail(Errc::InvalidGroup, "interval member " + std::to_string(v) + " exceeds n");
        s.elements.push_back(make_element(g, v));
    }
    std::sort(s.elements.begin(), s.elements.end());
    s.elements.erase(std::unique(s.elements.begin(), s.elements.end()), s.elements.end());
    return s;
}

SidonSet SidonSet::from_pairs(const GroupSpec& g, const std::vector<std::pair<u64, u64>>& pairs) {
    SidonSet s{g, {}, std::nullopt, Flavor::Ordered};
    s.elements.reserve(pairs.size());
    for (auto [a, b] : pairs) s.elements.push_back(make_element(g, a, b));
    std::sort(s.elements.begin(), s.elements.end());
    s.elements.erase(std::unique(s.elements.begin(), s.elements.end()), s.elements.end());
    return s;
}

u64 RepProfile::max_for(Flavor f) const {
    switch (f) {
        case Flavor::Ordered:    return max_r;
        case Flavor::Restricted: return max_r_restricted;
        case Flavor::Unordered:  return max_r_unordered;
    }
    return 0;
}

const std::vector<u64>& RepProfile::counts_for(Flavor f) const {
    switch (f) {
        case Flavor::Restricted: return r_restricted;
        case Flavor::Unordered:  return r_unordered;
        default:                 return r;
    }
}

namespace {

// Shared tail: fills r' and r* from r and the doubling counts t(x) = #{a in
// A : a+a = x} (r' = r - t, r* = (r+t)/2), then the max statistics.
void finish_profile(RepProfile& out, const SidonSet& A) {
    const GroupSpec& g = A.group;
    u64 sd = g.sum_domain_size();
    std::vector<u64> t(sd, 0);
    for (const GroupElement& e : A.elements)
        ++t[element_index(g, add(e, e, g))];

    out.r_restricted.assign(sd, 0);
    out.r_unordered.assign(sd, 0);
    u64 best = 0, best_idx = 0;
    bool seen = false;
    for (u64 i = 0; i < sd; ++i) {
        out.r_restricted[i] = out.r[i] - t[i];
        out.r_unordered[i]  = (out.r[i] + t[i]) / 2;
        out.max_r_restricted = std::max(out.max_r_restricted, out.r_restricted[i]);
        out.max_r_unordered  = std::max(out.max_r_unordered, out.r_unordered[i]);
        if (!seen || out.r[i] > best) { best = out.r[i]; best_idx = i; seen = true; }
    }
    out.max_r = best;
    out.argmax = element_at(g, best_idx);
}

std::vector<u64> linear_indices(const SidonSet& A) {
    std::vector<u64> v;
    v.reserve(A.elements.size());
    for (const GroupElement& e : A.elements) v.push_back(element_index(A.group, e));
    return v;
}

} // namespace

RepProfile rep_profile_direct(const SidonSet& A) {
    const GroupSpec& g = A.group;
    RepProfile out{g, {}, {}, {}, 0, 0, 0, element_at(g, 0)};
    u64 sd = g.sum_domain_size();
    out.r.assign(sd, 0);

    std::vector<u64> idx = linear_indices(A);
    u64 m = idx.size();
    switch (g.kind()) {
        case GroupKind::IntegerInterval:
            for (u64 i = 0; i < m; ++i)
                for (u64 j = 0; j < m; ++j)
                    ++out.r[idx[i] + idx[j]];
            break;
        case GroupKind::Cyclic: {
            u64 q = g.param();
            for (u64 i = 0; i < m; ++i)
                for (u64 j = 0; j < m; ++j) {
                    u64 s = idx[i] + idx[j];
                    if (s >= q) s -= q;
                    ++out.r[s];
                }
            break;
        }
        case GroupKind::ProductPP: {
            u64 p = g.param();
            u64 mm = m;
            const std::vector<GroupElement>& el = A.elements;
            for (u64 i = 0; i < mm; ++i)
                for (u64 j = 0; j < mm; ++j) {
                    u64 sa = el[i].a + el[j].a;
                    u64 sb = el[i].b + el[j].b;
                    if (sa >= p) sa -= p;
                    if (sb >= p) sb -= p;
                    ++out.r[sa * p + sb];
                }
            break;
        }
    }
    finish_profile(out, A);
    return out;
}

RepProfile rep_profile_fft(const SidonSet& A) {
    const GroupSpec& g = A.group;
    if (g.kind() == GroupKind::ProductPP)
        fail(Errc::GroupUnsupported, "rep_profile_fft: use the direct engine for product groups");

    u64 order = g.order();
    u64 m = A.size();
    u64 len = std::bit_ceil(std::max<u64>(2 * order, 2));

    // Percival-style bound on the accumulated convolution error: counts are
    // integers <= |A|, so rounding is exact as long as the bound stays below
    // the half-unit threshold.
    double eps = std::numeric_limits<double>::epsilon();
    double bound = 6.0 * eps * std::log2(static_cast<double>(len)) * static_cast<double>(m);
    if (bound >= 0.25)
        fail(Errc::PrecisionOverflow, "rep_profile_fft: cannot guarantee exact rounding at this size");

    std::vector<double> ind(len, 0.0);
    for (u64 v : linear_indices(A)) ind[v] = 1.0;

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, ind);
    for (auto& z : spec) z *= z;
    std::vector<double> conv;
    fft.inv(conv, spec);

    RepProfile out{g, {}, {}, {}, 0, 0, 0, element_at(g, 0)};
    u64 sd = g.sum_domain_size();
    out.r.assign(sd, 0);

    auto take = [&](double v, u64 slot) {
        double rounded = std::nearbyint(v);
        if (std::abs(v - rounded) > 0.25 || rounded < 0.0 || rounded > static_cast<double>(m))
            fail(Errc::PrecisionOverflow, "rep_profile_fft: convolution did not round cleanly");
        out.r[slot] += static_cast<u64>(rounded);
    };

    if (g.kind() == GroupKind::IntegerInterval) {
        for (u64 x = 0; x < sd; ++x) take(conv[x], x);
    } else {
        u64 q = g.param();
        for (u64 x = 0; x < q; ++x) take(conv[x], x);
        for (u64 x = q; x <= 2 * q - 2; ++x) take(conv[x], x - q);
    }
    finish_profile(out, A);
    return out;
}

RepProfile rep_profile(const SidonSet& A) {
    const GroupSpec& g = A.group;
    if (g.kind() == GroupKind::ProductPP) return rep_profile_direct(A);
    // Crossover: pair enumeration costs |A|^2, the FFT about len log len.
    u64 m = A.size();
    u64 order = g.order();
    if (m >= 128 && m * m > 16 * order) return rep_profile_fft(A);
    return rep_profile_direct(A);
}

VerifyResult verify_g_sidon(const SidonSet& A, u64 g, Flavor flavor) {
    RepProfile prof = rep_profile(A);
    const std::vector<u64>& counts = prof.counts_for(flavor);
    for (u64 i = 0; i < counts.size(); ++i) {
        if (counts[i] > g)
            return VerifyResult{false, element_at(A.group, i), counts[i]};
    }
    return VerifyResult{true, element_at(A.group, 0), 0};
}

u64 DiffProfile::at(i64 delta) const {
    if (group.kind() == GroupKind::Cyclic) {
        i64 q = static_cast<i64>(group.param());
        i64 d = delta % q;
        if (d < 0) d += q;
        return counts[static_cast<u64>(d)];
    }
    i64 n = static_cast<i64>(group.param());
    if (delta < -n || delta > n) return 0;
    return counts[static_cast<u64>(delta + n)];
}

DiffProfile difference_profile(const SidonSet& A) {
    const GroupSpec& g = A.group;
    if (g.kind() == GroupKind::ProductPP)
        fail(Errc::GroupUnsupported, "difference_profile: defined for intervals and cyclic groups");

    DiffProfile out{g, {}};
    std::vector<u64> idx = linear_indices(A);
    u64 m = idx.size();
    if (g.kind() == GroupKind::Cyclic) {
        u64 q = g.param();
        out.counts.assign(q, 0);
        for (u64 i = 0; i < m; ++i)
            for (u64 j = 0; j < m; ++j) {
                u64 d = idx[i] + q - idx[j];
                if (d >= q) d -= q;
                ++out.counts[d];
            }
    } else {
        u64 n = g.param();
        out.counts.assign(2 * n + 1, 0);
        for (u64 i = 0; i < m; ++i)
            for (u64 j = 0; j < m; ++j)
                ++out.counts[idx[i] + n - idx[j]];
    }
    return out;
}

} // namespace sidonforge
