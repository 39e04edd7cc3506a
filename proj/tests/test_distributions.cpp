#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "imb/distributions.hpp"
#include "imb/stats.hpp"

using namespace imb;

namespace {

DistributionSpec spec_for(Family f, double alpha = 2.0) {
    DistributionSpec s;
    s.family = f;
    s.scale = default_scale(f);
    s.alpha = alpha;
    return s;
}

const Family kFamilies[] = {Family::Uniform, Family::Gaussian, Family::Laplace,
                            Family::TwoSidedFrechet};

}  // namespace

TEST_CASE("quantile inverts the cdf for every family") {
    for (Family f : kFamilies) {
        const DistributionSpec s = spec_for(f);
        for (double p : {1e-6, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0 - 1e-6}) {
            const double x = quantile(s, p);
            CHECK(cdf(s, x) == doctest::Approx(p).epsilon(1e-10));
        }
    }
}

TEST_CASE("cdf is monotone and symmetric around mu") {
    for (Family f : kFamilies) {
        DistributionSpec s = spec_for(f);
        s.mu = 0.7;
        double prev = -0.1;
        for (double x = -5.0; x <= 6.5; x += 0.05) {
            const double v = cdf(s, x);
            CHECK(v >= prev);
            prev = v;
            // symmetry: F(mu - t) = 1 - F(mu + t)
            const double t = x - s.mu;
            CHECK(cdf(s, s.mu - t) == doctest::Approx(1.0 - cdf(s, s.mu + t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("tail_function is increasing in t and matches the quantile") {
    for (Family f : kFamilies) {
        const DistributionSpec s = spec_for(f);
        double prev = -1e300;
        for (double t : {2.0, 5.0, 20.0, 1e3, 1e6}) {
            const double u = tail_function(s, t);
            CHECK(u > prev);
            prev = u;
            CHECK(u == doctest::Approx(quantile(s, 1.0 - 1.0 / t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("evt_constants: tail classes and exact sequences") {
    const std::uint64_t n = 1000;

    const auto uni = evt_constants(spec_for(Family::Uniform), n);
    CHECK(uni.tail_type == TailType::Weibull);
    CHECK(uni.x_f.finite);
    CHECK(uni.x_f.value == doctest::Approx(0.5));
    CHECK(uni.a_n == doctest::Approx(1.0 / 1000.0));  // 2*scale/n with scale 1/2
    CHECK(uni.b_n == doctest::Approx(0.5));

    const auto lap = evt_constants(spec_for(Family::Laplace), n);
    CHECK(lap.tail_type == TailType::Gumbel);
    CHECK(lap.b_n == doctest::Approx(std::log(n / 2.0)));
    CHECK(lap.a_n == doctest::Approx(1.0));  // g is exactly the scale
    CHECK(lap.b_n_asymptotic == doctest::Approx(std::log(static_cast<double>(n))));

    const auto gau = evt_constants(spec_for(Family::Gaussian), n);
    CHECK(gau.tail_type == TailType::Gumbel);
    CHECK(gau.b_n > 3.0);
    CHECK(gau.b_n < 3.5);
    CHECK(gau.a_n > 0.0);
    CHECK(gau.a_n < 1.0);

    const auto fre = evt_constants(spec_for(Family::TwoSidedFrechet, 2.0), n);
    CHECK(fre.tail_type == TailType::Frechet);
    CHECK(fre.alpha == doctest::Approx(2.0));
    CHECK(fre.b_n == 0.0);
    // exact a_n = U(n) approaches the asymptotic (n/2)^... form from the
    // two-sided tail: P(X > x) = x^{-alpha}/2, so U(n) = (n/2)^{-1/alpha}...
    CHECK(fre.a_n == doctest::Approx(tail_function(spec_for(Family::TwoSidedFrechet, 2.0),
                                                   static_cast<double>(n))));
}

TEST_CASE("gumbel auxiliary function: closed forms agree with quadrature") {
    const DistributionSpec lap = spec_for(Family::Laplace);
    const DistributionSpec gau = spec_for(Family::Gaussian);
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        CHECK(gumbel_aux_g(lap, t) == doctest::Approx(gumbel_aux_g_numeric(lap, t)).epsilon(1e-8));
        CHECK(gumbel_aux_g(gau, t) == doctest::Approx(gumbel_aux_g_numeric(gau, t)).epsilon(1e-8));
    }
}

TEST_CASE("limit_cdf is a proper CDF for each tail type") {
    for (Family f : kFamilies) {
        const auto norm = evt_constants(spec_for(f), 100);
        double prev = 0.0;
        for (double x = -6.0; x <= 6.0; x += 0.01) {
            const double v = limit_cdf(norm, x);
            CHECK(v >= prev - 1e-15);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
        CHECK(limit_cdf(norm, 50.0) > 0.999);
    }
}

TEST_CASE("sample_one follows the family law (KS test)") {
    for (Family f : kFamilies) {
        const DistributionSpec s = spec_for(f);
        RngStream rng(2024);
        const auto xs = sample(s, rng, 20000);
        std::vector<double> v(xs.begin(), xs.end());
        const double d = ks_statistic(std::move(v), [&](double x) { return cdf(s, x); });
        // 1.63/sqrt(n) is the 1% critical value
        CHECK(d < 1.63 / std::sqrt(20000.0));
    }
}

TEST_CASE("sample_limit follows limit_cdf (KS test)") {
    for (Family f : kFamilies) {
        const auto norm = evt_constants(spec_for(f), 50);
        RngStream rng(99);
        std::vector<double> v(20000);
        for (auto& x : v) x = sample_limit(norm, rng);
        const double d = ks_statistic(std::move(v), [&](double x) { return limit_cdf(norm, x); });
        CHECK(d < 1.63 / std::sqrt(20000.0));
    }
}

TEST_CASE("family_name round-trips through family_from_name") {
    for (Family f : kFamilies) {
        CHECK(family_from_name(family_name(f)) == f);
    }
    CHECK_THROWS_AS(family_from_name("cauchy"), std::invalid_argument);
}
