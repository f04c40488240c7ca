#pragma once

#include <Eigen/Core>

#include "sidonforge/repfn.hpp"

namespace sidonforge {

// Nonnegative step function on [0,1): value coeffs[i] on [i/N, (i+1)/N).
struct StepFunction {
    Eigen::ArrayXd coeffs;

    int pieces() const { return static_cast<int>(coeffs.size()); }
    double integral() const { return coeffs.sum() / pieces(); }

    static StepFunction uniform(int N) { return StepFunction{Eigen::ArrayXd::Ones(N)}; }
    // Midpoint samples of 1/sqrt(pi x); its self-convolution is flat at 1, so
    // the ratio tends to 2/sqrt(pi) as N grows.
    static StepFunction sqrt_profile(int N);
};

// f*f is piecewise linear with knots at j/N; breakpoints[j] = (f*f)(j/N).
// coeff_conv[m] = sum_i a_i a_{m-i}, so sup(f*f) = max_m coeff_conv[m] / N,
// attained at x = (argmax+1)/N.
struct Autoconvolution {
    Eigen::ArrayXd breakpoints; // 2N+1 values
    Eigen::ArrayXd coeff_conv;  // 2N-1 values
    double sup = 0.0;
    int argmax = 0;
};

Autoconvolution autoconvolution(const StepFunction& f);

// (sum a_i) / (sqrt(N) sqrt(max_m sum_i a_i a_{m-i})), scale-invariant; equals
// integral(f) / sqrt(sup f*f). Throws ZeroFunction on the zero function.
double poly_ratio(const StepFunction& f);

struct OptimizeResult {
    StepFunction f;
    double ratio = 0.0;       // certified by a from-scratch re-evaluation
    u64 evaluations = 0;
};

// Projected coordinate ascent on poly_ratio over nonnegative coefficient
// vectors, starting from sqrt_profile(N), with seeded random restarts.
// The returned ratio is a certified lower bound for the degree-N supremum.
OptimizeResult optimize_sigma(int N, u64 budget, u64 seed);

struct DiscretizationParams {
    u64 n = 0;
    double alpha = 1.0 / 3.0; // in (0, 1/2)
    double eps = 0.0;         // in (0, 1)

    u64 window() const; // L = ceil(n^(1-2 alpha) / (1-eps)^2)
};

// Windowed-average discretization a_i = (n/2L) * integral of g over
// [(i-L)/n, (i+L)/n], after normalizing g so that sup(g*g) <= 1. The three
// target inequalities and the edge-mass floor are checked exactly against
// the actual integral of g and reported, never assumed.
struct DiscretizeResult {
    Eigen::ArrayXd a;        // n+1 coefficients
    u64 L = 0;
    double integral_g = 0.0; // plays the extremal constant's role in checks

    double max_coeff = 0.0, coeff_cap = 0.0;     // (1) a_i <= n^alpha (1-eps)
    double sum = 0.0, mass_floor = 0.0;          // (2) sum >= n * integral_g * (1-eps)
    double edge_floor = 0.0;                     //     sum >= n * integral_g - sqrt(2nL)
    double max_pair_sum = 0.0, pair_cap = 0.0;   // (3) max_m sum a_i a_{m-i} <= n (1+eps)
    bool cap_ok = false, mass_ok = false, conv_ok = false, edge_ok = false;
};

DiscretizeResult discretize(const StepFunction& f, const DiscretizationParams& params);

// Independent Bernoulli inclusion probabilities over {0..n}.
struct ProbModel {
    Eigen::ArrayXd probs;        // n+1 entries in [0,1]
    double target_integral = 0.0;
    double target_sum = 0.0;     // sum of probs = target_integral * n^(1-alpha)
    u64 seed = 0;

    u64 n() const { return static_cast<u64>(probs.size()) - 1; }
};

// p_i = a_i * target * n^(1-alpha) / sum(a). Throws ProbabilityOverflow if
// any p_i would exceed 1.
ProbModel make_prob_model(const Eigen::ArrayXd& a, u64 n, double alpha,
                          double target_integral, u64 seed);

// sqrt_profile -> normalize -> discretize -> probabilities, the standard
// alpha = 1/3 pipeline.
ProbModel pipeline_model(const StepFunction& f, u64 n, double eps, u64 seed);

SidonSet sample_random_set(const ProbModel& model);

// 2 exp(-min(delta^2/4, delta/2) * expectation).
double chernoff_bound(double expectation, double delta);

struct MonteCarloReport {
    u64 n = 0, trials = 0;
    double eps = 0.0;
    double target_integral = 0.0;
    u64 seed = 0;
    double size_threshold = 0.0; // sum(p) * (1 - eps)
    double rep_threshold = 0.0;  // n^(1/3) ((1+eps)/(1-eps))^3
    u64 successes = 0;
    double success_rate = 0.0;
    double size_mean = 0.0, size_expected = 0.0;
    u64 size_min = 0, size_max = 0;
    double max_r_mean = 0.0;
    u64 max_r_max = 0;
};

// Samples `trials` sets, computes exact profiles, and reports the fraction
// meeting both the size floor and the representation cap.
MonteCarloReport monte_carlo_check(const ProbModel& model, u64 trials, double eps);

} // namespace sidonforge
