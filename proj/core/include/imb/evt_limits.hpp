#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "imb/dataset.hpp"
#include "imb/distributions.hpp"
#include "imb/rng.hpp"

namespace imb {

// Probability budget of one high-probability statement: epsilon for the
// separability of the draw, delta for the distance to the limit law, gamma
// for the quantile level inside the event.
struct TheoremBudget {
    double epsilon = 0.1;
    double delta = 0.1;
    double gamma = 0.1;
    Rational beta{1, 100};
    std::uint64_t n = 1'000'000;
    double alpha = 1.0;  // Frechet shape, ignored elsewhere

    // 1 - 2e - 2d - 3g, or 1 - 2(e+d) - 5g for the Frechet family.
    double prob_floor(Family family) const;
};

// Throws std::invalid_argument unless the budget satisfies the family's side
// conditions (positive floor, integral beta*n; Gaussian additionally
// beta >= n^{-3/4} and n beta^2 >= epsilon).
void check_budget(Family family, const TheoremBudget& budget);

struct BoundSet {
    double erm_theta_lower = 0.0;
    double sub_theta_upper = 0.0;
    double erm_wce_lower = 0.0;
    double sub_wce_upper = 0.0;
    double prob_floor = 0.0;
    bool degenerate = false;  // a lower bound was clamped up to 0
};

BoundSet bounds_laplace(const TheoremBudget& budget);
BoundSet bounds_gaussian(const TheoremBudget& budget);
BoundSet bounds_frechet(const TheoremBudget& budget);
BoundSet bounds_for(Family family, const TheoremBudget& budget);

// Which normalization constants feed the limit samplers: the exact
// tail-function values or the textbook asymptotic forms.
enum class ConstantsKind { Exact, Asymptotic };

// One draw from the limit of theta_sub: (a_{bn}/2)(Z1 - Z2), where the
// normalization is computed at beta*n.
double limit_theta_sub(const EvtNormalization& norm_beta_n, ConstantsKind kind, RngStream& rng);

// One draw from the limit of theta_erm:
// (b_{bn} - b_n + a_{bn} Z3 - a_n Z4) / 2.
double limit_theta_erm(const EvtNormalization& norm_n, const EvtNormalization& norm_beta_n,
                       ConstantsKind kind, RngStream& rng);

struct ValidateOptions {
    double ks_threshold = 0.05;  // Uniform mode
    double confidence = 0.99;    // Wilson interval level
};

struct ValidationReport {
    Family family = Family::Laplace;
    TheoremBudget budget;
    BoundSet bounds;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t event_hits = 0;
    std::size_t wce_bracket_hits = 0;
    std::size_t non_separable_count = 0;
    double empirical_freq = 0.0;
    double wce_bracket_freq = 0.0;
    double prob_floor = 0.0;
    double wilson_lower = 0.0;
    double wilson_slack = 0.0;
    bool passed = false;
    bool insufficient_trials = false;
    double mean_theta_erm = 0.0;
    double mean_theta_sub = 0.0;
    double mean_wce_erm = 0.0;
    double mean_wce_sub = 0.0;
    double ks_stat = 0.0;       // Uniform mode only
    double ks_threshold = 0.0;  // Uniform mode only
};

// Monte Carlo check of one theorem's high-probability event at finite n.
// Per trial: generate with the mu_n schedule, fit theta_erm on the full data
// and theta_sub after majority subsampling, test the event
//   separable  AND  |theta_erm| >= erm_theta_lower  AND  |theta_sub| <= sub_theta_upper.
// Non-separable draws count as failures. The Uniform family instead compares
// the trial sets {theta_erm} and {theta_sub} by a two-sample KS distance.
ValidationReport validate_theorem(Family family, const TheoremBudget& budget, std::size_t trials,
                                  std::uint64_t seed, const ValidateOptions& opts = {});

std::string report_to_json(const ValidationReport& report);

// P(|Z3 - Z4| <= tau) for independent standard Gumbels: the difference is
// standard logistic, giving 1 - 2/(1+e^tau).
double logistic_diff_cdf(double tau);

// Feller's bracket for P(N(0,1) >= t), t > 0:
//   e^{-t^2/2}/sqrt(2 pi) * (1/t - 1/t^3)  <=  tail  <=  e^{-t^2/2}/(t sqrt(2 pi)).
// The lower bound is returned as-is (negative for t < 1).
std::pair<double, double> gaussian_tail_bounds(double t);

// x(1 - 1/e) <= 1 - e^{-x} <= x on [0, 1].
std::pair<double, double> expx_sandwich(double x);

// Empirical check that lambda_n * B vanishes in probability: the exceedance
// P(lambda_n |B| >= eps), estimated with `draws` samples per lambda, must be
// nonincreasing along the sequence (up to Monte Carlo noise) and end at or
// below final_threshold.
bool shrink_to_zero_check(const std::function<double(RngStream&)>& sample_b,
                          const std::vector<double>& lambdas, double eps, std::size_t draws,
                          std::uint64_t seed, double final_threshold = 0.01);

}  // namespace imb
