#include "sidonforge/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sidonforge {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Relative slack for inequality checks on floating grids.
constexpr double kRelSlack = 1e-9;

bool leq_slack(double lhs, double rhs) {
    return lhs <= rhs + std::abs(rhs) * kRelSlack + 1e-12;
}

bool geq_slack(double lhs, double rhs) {
    return lhs >= rhs - std::abs(rhs) * kRelSlack - 1e-12;
}

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// 53-bit uniform in [0,1); avoids distribution objects so streams are
// identical across standard library implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

StepFunction StepFunction::sqrt_profile(int N) {
    Eigen::ArrayXd a(N);
    for (int i = 0; i < N; ++i)
        a[i] = std::sqrt(static_cast<double>(N) / (kPi * (i + 0.5)));
    return StepFunction{std::move(a)};
}

Autoconvolution autoconvolution(const StepFunction& f) {
    const Eigen::ArrayXd& a = f.coeffs;
    int N = f.pieces();
    if (N < 1) fail(Errc::InvalidParameter, "autoconvolution: empty step function");
    Eigen::ArrayXd c = Eigen::ArrayXd::Zero(2 * N - 1);
    for (int i = 0; i < N; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; j < N; ++j) c[i + j] += a[i] * a[j];
    }
    int argmax = 0;
    double cmax = c.maxCoeff(&argmax);

    Eigen::ArrayXd bp = Eigen::ArrayXd::Zero(2 * N + 1);
    for (int j = 1; j <= 2 * N - 1; ++j) bp[j] = c[j - 1] / N;

    return Autoconvolution{std::move(bp), std::move(c), cmax / N, argmax};
}

double poly_ratio(const StepFunction& f) {
    double s = f.coeffs.sum();
    if (s <= 0.0) fail(Errc::ZeroFunction, "poly_ratio: function is identically zero");
    Autoconvolution conv = autoconvolution(f);
    double cmax = conv.coeff_conv.maxCoeff();
    return s / (std::sqrt(static_cast<double>(f.pieces())) * std::sqrt(cmax));
}

namespace {

// Hill-climbing state over the coefficient vector with O(N) proposals.
struct AscentState {
    Eigen::ArrayXd a;
    Eigen::ArrayXd c; // coefficient self-convolution
    double sum = 0.0;
    int N = 0;

    void recompute() {
        sum = a.sum();
        c = Eigen::ArrayXd::Zero(2 * N - 1);
        for (int i = 0; i < N; ++i) {
            if (a[i] == 0.0) continue;
            for (int j = 0; j < N; ++j) c[i + j] += a[i] * a[j];
        }
    }

    double ratio() const {
        return sum / (std::sqrt(static_cast<double>(N)) * std::sqrt(c.maxCoeff()));
    }

    // Ratio if a[i] were changed by delta, without committing.
    double probe(int i, double delta) const {
        double m = 0.0;
        for (int x = 0; x < 2 * N - 1; ++x) {
            double v = c[x];
            int j = x - i;
            if (j >= 0 && j < N) {
                v += 2.0 * delta * a[j];
                if (x == 2 * i) v += delta * delta;
            }
            if (v > m) m = v;
        }
        return (sum + delta) / (std::sqrt(static_cast<double>(N)) * std::sqrt(m));
    }

    void commit(int i, double delta) {
        for (int x = i; x < i + N; ++x) c[x] += 2.0 * delta * a[x - i];
        c[2 * i] += delta * delta;
        a[i] += delta;
        sum += delta;
    }

    // Ratio if delta moved from a[j] to a[i] (sum unchanged).
    double probe_transfer(int i, int j, double delta) const {
        double m = 0.0;
        for (int x = 0; x < 2 * N - 1; ++x) {
            double v = c[x];
            int xi = x - i, xj = x - j;
            if (xi >= 0 && xi < N) v += 2.0 * delta * a[xi];
            if (xj >= 0 && xj < N) v -= 2.0 * delta * a[xj];
            if (x == 2 * i) v += delta * delta;
            if (x == 2 * j) v += delta * delta;
            if (x == i + j) v -= 2.0 * delta * delta;
            if (v > m) m = v;
        }
        return sum / (std::sqrt(static_cast<double>(N)) * std::sqrt(m));
    }

    void commit_transfer(int i, int j, double delta) {
        for (int x = i; x < i + N; ++x) c[x] += 2.0 * delta * a[x - i];
        for (int x = j; x < j + N; ++x) c[x] -= 2.0 * delta * a[x - j];
        c[2 * i] += delta * delta;
        c[2 * j] += delta * delta;
        c[i + j] -= 2.0 * delta * delta;
        a[i] += delta;
        a[j] -= delta;
    }
};

double certified_ratio(const Eigen::ArrayXd& a) {
    int N = static_cast<int>(a.size());
    long double s = 0.0L;
    for (int i = 0; i < N; ++i) s += static_cast<long double>(a[i]);
    long double cmax = 0.0L;
    std::vector<long double> c(2 * N - 1, 0.0L);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) c[i + j] += static_cast<long double>(a[i]) * a[j];
    for (long double v : c) cmax = std::max(cmax, v);
    if (cmax <= 0.0L) fail(Errc::ZeroFunction, "optimize_sigma: degenerate state");
    return static_cast<double>(s / (std::sqrt(static_cast<long double>(N)) * std::sqrt(cmax)));
}

} // namespace

OptimizeResult optimize_sigma(int N, u64 budget, u64 seed) {
    if (N < 1) fail(Errc::InvalidParameter, "optimize_sigma: need N >= 1");
    if (N == 1) return OptimizeResult{StepFunction::uniform(1), 1.0, 0};

    AscentState st;
    st.N = N;
    st.a = StepFunction::sqrt_profile(N).coeffs;
    st.recompute();

    Eigen::ArrayXd best_a = st.a;
    double best = st.ratio();

    std::mt19937_64 rng(splitmix64(seed ^ 0x5f3759df5f3759dfULL));
    double step = 0.25;
    u64 since_accept = 0;

    for (u64 it = 0; it < budget; ++it) {
        double cur = st.ratio();
        double scale = st.sum / N;
        bool accepted = false;

        if (uniform01(rng) < 0.5) {
            int i = static_cast<int>(rng() % static_cast<u64>(N));
            double delta = (uniform01(rng) < 0.5 ? -1.0 : 1.0) * step * scale * (0.25 + uniform01(rng));
            if (st.a[i] + delta < 0.0) delta = -st.a[i];
            if (delta != 0.0 && st.probe(i, delta) > cur) {
                st.commit(i, delta);
                accepted = true;
            }
        } else {
            int i = static_cast<int>(rng() % static_cast<u64>(N));
            int j = static_cast<int>(rng() % static_cast<u64>(N));
            if (i != j) {
                double delta = std::min(step * scale * (0.25 + uniform01(rng)), st.a[j]);
                if (delta > 0.0 && st.probe_transfer(i, j, delta) > cur) {
                    st.commit_transfer(i, j, delta);
                    accepted = true;
                }
            }
        }

        if (accepted) {
            if (st.ratio() > best) { best = st.ratio(); best_a = st.a; }
            since_accept = 0;
        } else if (++since_accept >= 400) {
            step *= 0.6;
            since_accept = 0;
            if (step < 1e-7) {
                // Restart near the incumbent.
                st.a = best_a;
                for (int j = 0; j < N; ++j)
                    st.a[j] = std::max(0.0, st.a[j] * (1.0 + 0.05 * (uniform01(rng) - 0.5)));
                st.recompute();
                step = 0.1;
            }
        }
    }

    double certified = certified_ratio(best_a);
    return OptimizeResult{StepFunction{std::move(best_a)}, certified, budget};
}

u64 DiscretizationParams::window() const {
    double raw = std::pow(static_cast<double>(n), 1.0 - 2.0 * alpha) / ((1.0 - eps) * (1.0 - eps));
    return static_cast<u64>(std::ceil(raw - 1e-12));
}

DiscretizeResult discretize(const StepFunction& f, const DiscretizationParams& params) {
    if (!(params.eps > 0.0 && params.eps < 1.0))
        fail(Errc::InvalidParameter, "discretize: need eps in (0,1)");
    if (!(params.alpha > 0.0 && params.alpha < 0.5))
        fail(Errc::InvalidParameter, "discretize: need alpha in (0,1/2)");
    if (params.n < 1) fail(Errc::InvalidParameter, "discretize: need n >= 1");

    u64 n = params.n;
    u64 L = params.window();
    if (L < 1 || 2 * L > n)
        fail(Errc::WindowTooLarge, "discretize: window L=" + std::to_string(L) +
                                   " violates 1 <= L <= n/2 for n=" + std::to_string(n));

    Autoconvolution conv = autoconvolution(f);
    if (conv.sup <= 0.0) fail(Errc::ZeroFunction, "discretize: zero function");
    double scale = conv.sup > 1.0 ? 1.0 / std::sqrt(conv.sup) : 1.0;

    int N = f.pieces();
    Eigen::ArrayXd g = f.coeffs * scale;

    // Prefix integrals of g at cell boundaries, so windows evaluate exactly.
    std::vector<long double> prefix(N + 1, 0.0L);
    for (int i = 0; i < N; ++i) prefix[i + 1] = prefix[i] + static_cast<long double>(g[i]);

    auto integral_to = [&](double x) -> long double { // int_0^x g, 0 <= x <= 1
        if (x <= 0.0) return 0.0L;
        if (x >= 1.0) return prefix[N] / N;
        double scaled = x * N;
        int cell = std::min(N - 1, static_cast<int>(scaled));
        return prefix[cell] / N + static_cast<long double>(g[cell]) * (x - static_cast<double>(cell) / N);
    };

    DiscretizeResult out;
    out.L = L;
    out.integral_g = static_cast<double>(prefix[N] / N);
    out.a.resize(n + 1);
    double nd = static_cast<double>(n);
    for (u64 i = 0; i <= n; ++i) {
        double lo = (static_cast<double>(i) - static_cast<double>(L)) / nd;
        double hi = (static_cast<double>(i) + static_cast<double>(L)) / nd;
        out.a[i] = static_cast<double>((integral_to(hi) - integral_to(lo)) * nd / (2.0L * L));
    }

    out.max_coeff = out.a.maxCoeff();
    out.coeff_cap = std::pow(nd, params.alpha) * (1.0 - params.eps);
    out.cap_ok = leq_slack(out.max_coeff, out.coeff_cap);

    out.sum = out.a.sum();
    out.mass_floor = nd * out.integral_g * (1.0 - params.eps);
    out.mass_ok = geq_slack(out.sum, out.mass_floor);
    out.edge_floor = nd * out.integral_g - std::sqrt(2.0 * nd * static_cast<double>(L));
    out.edge_ok = geq_slack(out.sum, out.edge_floor);

    double maxpair = 0.0;
    for (u64 m = 0; m <= 2 * n; ++m) {
        u64 lo = m > n ? m - n : 0;
        u64 hi = std::min(m, n);
        double s = 0.0;
        for (u64 i = lo; i <= hi; ++i) s += out.a[i] * out.a[m - i];
        if (s > maxpair) maxpair = s;
    }
    out.max_pair_sum = maxpair;
    out.pair_cap = nd * (1.0 + params.eps);
    out.conv_ok = leq_slack(out.max_pair_sum, out.pair_cap);
    return out;
}

ProbModel make_prob_model(const Eigen::ArrayXd& a, u64 n, double alpha,
                          double target_integral, u64 seed) {
    if (static_cast<u64>(a.size()) != n + 1)
        fail(Errc::InvalidParameter, "make_prob_model: need n+1 coefficients");
    double total = a.sum();
    if (total <= 0.0) fail(Errc::ZeroFunction, "make_prob_model: zero coefficient mass");
    if (target_integral <= 0.0) fail(Errc::InvalidParameter, "make_prob_model: target must be positive");

    double factor = target_integral * std::pow(static_cast<double>(n), 1.0 - alpha) / total;
    ProbModel model;
    model.probs = a * factor;
    for (u64 i = 0; i <= n; ++i) {
        if (model.probs[i] > 1.0)
            fail(Errc::ProbabilityOverflow, "make_prob_model: p[" + std::to_string(i) + "] = " +
                                            std::to_string(model.probs[i]) + " > 1");
        if (model.probs[i] < 0.0) model.probs[i] = 0.0;
    }
    model.target_integral = target_integral;
    model.target_sum = model.probs.sum();
    model.seed = seed;
    return model;
}

ProbModel pipeline_model(const StepFunction& f, u64 n, double eps, u64 seed) {
    DiscretizationParams params{n, 1.0 / 3.0, eps};
    DiscretizeResult d = discretize(f, params);
    return make_prob_model(d.a, n, 1.0 / 3.0, d.integral_g, seed);
}

SidonSet sample_random_set(const ProbModel& model) {
    std::mt19937_64 rng(splitmix64(model.seed));
    u64 n = model.n();
    std::vector<u64> vals;
    for (u64 i = 0; i <= n; ++i)
        if (uniform01(rng) < model.probs[i]) vals.push_back(i);
    return SidonSet::from_values(GroupSpec::interval(n), vals);
}

double chernoff_bound(double expectation, double delta) {
    if (expectation < 0.0 || delta <= 0.0)
        fail(Errc::InvalidParameter, "chernoff_bound: need expectation >= 0 and delta > 0");
    return 2.0 * std::exp(-std::min(delta * delta / 4.0, delta / 2.0) * expectation);
}

MonteCarloReport monte_carlo_check(const ProbModel& model, u64 trials, double eps) {
    if (trials < 1) fail(Errc::InvalidParameter, "monte_carlo_check: need trials >= 1");
    u64 n = model.n();

    MonteCarloReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.eps = eps;
    rep.target_integral = model.target_integral;
    rep.seed = model.seed;
    rep.size_threshold = model.target_sum * (1.0 - eps);
    rep.rep_threshold = std::cbrt(static_cast<double>(n)) *
                        std::pow((1.0 + eps) / (1.0 - eps), 3.0);
    rep.size_expected = model.target_sum;
    rep.size_min = ~0ULL;

    double size_acc = 0.0, maxr_acc = 0.0;
    for (u64 t = 0; t < trials; ++t) {
        ProbModel trial_model = model;
        trial_model.seed = splitmix64(model.seed + 0x9e3779b97f4a7c15ULL * (t + 1));
        SidonSet A = sample_random_set(trial_model);
        u64 max_r = A.size() ? rep_profile(A).max_r : 0;

        bool ok_size = static_cast<double>(A.size()) >= rep.size_threshold;
        bool ok_rep = static_cast<double>(max_r) <= rep.rep_threshold;
        if (ok_size && ok_rep) ++rep.successes;

        size_acc += static_cast<double>(A.size());
        maxr_acc += static_cast<double>(max_r);
        rep.size_min = std::min(rep.size_min, A.size());
        rep.size_max = std::max(rep.size_max, A.size());
        rep.max_r_max = std::max(rep.max_r_max, max_r);
    }
    rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(trials);
    rep.size_mean = size_acc / static_cast<double>(trials);
    rep.max_r_mean = maxr_acc / static_cast<double>(trials);
    return rep;
}

} // namespace sidonforge
