#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "imb/erf.hpp"
#include "imb/evt_limits.hpp"
#include "imb/stats.hpp"

using namespace imb;

namespace {

TheoremBudget laplace_budget() {
    TheoremBudget b;
    b.beta = Rational(1, 100);
    b.n = 1'000'000;
    return b;
}

}  // namespace

TEST_CASE("probability floors") {
    TheoremBudget b;  // epsilon = delta = gamma = 0.1
    CHECK(b.prob_floor(Family::Laplace) == doctest::Approx(0.3));
    CHECK(b.prob_floor(Family::Gaussian) == doctest::Approx(0.3));
    CHECK(b.prob_floor(Family::TwoSidedFrechet) == doctest::Approx(0.1));
}

TEST_CASE("check_budget rejects malformed budgets") {
    TheoremBudget b = laplace_budget();
    CHECK_NOTHROW(check_budget(Family::Laplace, b));

    TheoremBudget frac = b;
    frac.n = 999'999;  // beta * n not integral
    CHECK_THROWS_AS(check_budget(Family::Laplace, frac), std::invalid_argument);

    TheoremBudget vac = b;
    vac.gamma = 0.4;  // floor would be negative
    CHECK_THROWS_AS(check_budget(Family::Laplace, vac), std::invalid_argument);

    // gaussian side condition: beta below n^{-3/4}
    TheoremBudget g = b;
    g.beta = Rational(1, 100'000);
    g.n = 1'000'000;
    CHECK_THROWS_AS(check_budget(Family::Gaussian, g), std::invalid_argument);
}

TEST_CASE("laplace bounds against hand arithmetic") {
    const TheoremBudget b = laplace_budget();
    const BoundSet s = bounds_laplace(b);
    CHECK(s.erm_theta_lower == doctest::Approx(0.5 * (std::log(100.0) - std::log(10.0))));
    CHECK(s.sub_theta_upper == doctest::Approx(0.5 * std::log(10.0)));
    CHECK(s.erm_wce_lower ==
          doctest::Approx(0.1 * std::sqrt(0.1) / (2.0 * 1e6 * std::sqrt(0.01))));
    CHECK(s.sub_wce_upper == doctest::Approx(0.1 / (1e6 * std::sqrt(0.1))));
    CHECK_FALSE(s.degenerate);
    // at beta = gamma^2 the two theta bounds coincide; smaller beta separates them
    CHECK(s.erm_theta_lower == doctest::Approx(s.sub_theta_upper));
    TheoremBudget tighter = b;
    tighter.beta = Rational(1, 1000);
    const BoundSet t = bounds_laplace(tighter);
    CHECK(t.erm_theta_lower > t.sub_theta_upper);
}

TEST_CASE("gaussian bounds scale like 1/sqrt(log n)") {
    TheoremBudget b;
    b.beta = Rational(1, 20);
    b.n = 1'000'000;
    const BoundSet s = bounds_gaussian(b);
    const double denom = 2.0 * std::sqrt(2.0 * std::log(b.beta.value() * 1e6));
    CHECK(s.sub_theta_upper == doctest::Approx(std::log(10.0) / denom));
    // at beta = 1/20 the raw erm theta bound (2/3 log(1/beta) - 2 log(1/gamma))
    // is negative, so it clamps to zero and the set is flagged degenerate
    CHECK(s.erm_theta_lower == 0.0);
    CHECK(s.degenerate);
    CHECK(s.sub_wce_upper == doctest::Approx(2.0 * 0.1 / (0.1 * 1e6)));

    TheoremBudget rare = b;
    rare.beta = Rational(1, 2000);
    rare.n = 2'000'000;
    const BoundSet r = bounds_gaussian(rare);
    const double rdenom = 2.0 * std::sqrt(2.0 * std::log(1000.0));
    CHECK(r.erm_theta_lower ==
          doctest::Approx(((2.0 / 3.0) * std::log(2000.0) - 2.0 * std::log(10.0)) / rdenom));
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("frechet bounds against hand arithmetic") {
    TheoremBudget b = laplace_budget();
    b.alpha = 2.0;
    const BoundSet s = bounds_frechet(b);
    const double sub = 0.5 * std::sqrt(1e6 * 0.01 / 0.1);
    CHECK(s.sub_theta_upper == doctest::Approx(sub));
    CHECK(s.erm_theta_lower ==
          doctest::Approx(0.5 * std::sqrt(1e6 / std::log(10.0)) - sub));
    CHECK(s.erm_theta_lower > 0.0);
}

TEST_CASE("limit samplers: determinism and symmetry") {
    const DistributionSpec lap{Family::Laplace, 0.0, 1.0, 1.0};
    const auto norm_n = evt_constants(lap, 1'000'000);
    const auto norm_bn = evt_constants(lap, 10'000);

    RngStream a(3), b(3);
    CHECK(limit_theta_sub(norm_bn, ConstantsKind::Exact, a) ==
          limit_theta_sub(norm_bn, ConstantsKind::Exact, b));
    CHECK(limit_theta_erm(norm_n, norm_bn, ConstantsKind::Exact, a) ==
          limit_theta_erm(norm_n, norm_bn, ConstantsKind::Exact, b));

    // theta_sub is a scaled difference of i.i.d. variables: symmetric, mean 0
    RngStream rng(44);
    std::vector<double> draws(20000);
    for (auto& x : draws) x = limit_theta_sub(norm_bn, ConstantsKind::Exact, rng);
    const auto ms = mean_std(draws);
    CHECK(std::abs(ms.mean) < 5.0 * ms.std / std::sqrt(20000.0));

    // theta_erm recenters by (b_bn - b_n)/2 < 0 for Laplace
    std::vector<double> erm(20000);
    for (auto& x : erm) x = limit_theta_erm(norm_n, norm_bn, ConstantsKind::Exact, rng);
    CHECK(mean_std(erm).mean < 0.0);
}

TEST_CASE("logistic_diff_cdf is the logistic law") {
    CHECK(logistic_diff_cdf(0.0) == doctest::Approx(0.0));
    CHECK(logistic_diff_cdf(1.0) == doctest::Approx(1.0 - 2.0 / (1.0 + std::exp(1.0))));
    CHECK(logistic_diff_cdf(40.0) == doctest::Approx(1.0));
}

TEST_CASE("gaussian_tail_bounds bracket the erf oracle") {
    for (double t = 0.1; t <= 10.0; t += 0.07) {
        const auto [lo, hi] = gaussian_tail_bounds(t);
        const double sf = norm_sf(t);
        CHECK(lo <= sf);
        CHECK(sf <= hi * (1.0 + 1e-14));
    }
}

TEST_CASE("expx_sandwich brackets 1 - exp(-x) on [0, 1]") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const auto [lo, hi] = expx_sandwich(x);
        const double v = -std::expm1(-x);
        CHECK(lo <= v + 1e-15);
        CHECK(v <= hi + 1e-15);
    }
}

TEST_CASE("shrink_to_zero_check distinguishes vanishing from fixed scales") {
    auto gauss = [](RngStream& rng) { return norm_quantile(rng.uniform01()); };
    const std::vector<double> shrinking{1.0, 0.3, 0.1, 0.03, 0.001};
    CHECK(shrink_to_zero_check(gauss, shrinking, 0.05, 20000, 7));
    const std::vector<double> stuck{1.0, 1.0, 1.0, 1.0};
    CHECK_FALSE(shrink_to_zero_check(gauss, stuck, 0.05, 20000, 7));
}

TEST_CASE("validate_theorem smoke: counters are coherent") {
    TheoremBudget b;
    b.beta = Rational(1, 10);
    b.n = 10'000;
    const ValidationReport r = validate_theorem(Family::Laplace, b, 100, 123);
    CHECK(r.trials == 100);
    CHECK(r.event_hits <= 100);
    CHECK(r.empirical_freq ==
          doctest::Approx(static_cast<double>(r.event_hits) / 100.0));
    CHECK(r.wce_bracket_hits <= r.event_hits);
    CHECK(r.wilson_lower <= r.empirical_freq);
    CHECK(r.seed == 123);
    // same seed, same outcome
    const ValidationReport r2 = validate_theorem(Family::Laplace, b, 100, 123);
    CHECK(r2.event_hits == r.event_hits);
    CHECK(r2.mean_theta_erm == r.mean_theta_erm);
}

TEST_CASE("report_to_json carries the headline fields") {
    TheoremBudget b;
    b.beta = Rational(1, 10);
    b.n = 1000;
    const ValidationReport r = validate_theorem(Family::Laplace, b, 100, 5);
    const std::string j = report_to_json(r);
    CHECK(j.find("\"family\"") != std::string::npos);
    CHECK(j.find("\"empirical_freq\"") != std::string::npos);
    CHECK(j.find("\"passed\"") != std::string::npos);
    CHECK(j.find("\"seed\"") != std::string::npos);
}
