#include <cmath>
#include <vector>

#include "doctest.h"
#include "imb/rng.hpp"
#include "imb/stats.hpp"

using namespace imb;

TEST_CASE("mean_std uses the sample (n-1) convention") {
    const auto ms = mean_std({1.0, 2.0, 3.0, 4.0});
    CHECK(ms.mean == doctest::Approx(2.5));
    CHECK(ms.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(ms.count == 4);
    const auto one = mean_std({7.0});
    CHECK(one.mean == doctest::Approx(7.0));
    CHECK(one.std == 0.0);
}

TEST_CASE("ks_statistic is small for a true uniform sample, large otherwise") {
    RngStream rng(17);
    std::vector<double> u(5000);
    for (auto& x : u) x = rng.uniform01();
    auto unif_cdf = [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); };
    CHECK(ks_statistic(u, unif_cdf) < 1.63 / std::sqrt(5000.0));
    // squared uniforms are not uniform
    for (auto& x : u) x = x * x;
    CHECK(ks_statistic(u, unif_cdf) > 0.2);
}

TEST_CASE("ks_two_sample on hand-checkable samples") {
    // disjoint supports: distance 1
    CHECK(ks_two_sample({1.0, 2.0, 3.0}, {5.0, 6.0}) == doctest::Approx(1.0));
    // identical samples: distance 0
    CHECK(ks_two_sample({1.0, 2.0}, {1.0, 2.0}) == doctest::Approx(0.0));
    // {1,3} vs {2,4}: max gap is 1/2 just after 1
    CHECK(ks_two_sample({1.0, 3.0}, {2.0, 4.0}) == doctest::Approx(0.5));
}

TEST_CASE("ks_two_sample stays below the critical value for same-law samples") {
    RngStream rng(9);
    std::vector<double> a(4000), b(4000);
    for (auto& x : a) x = rng.uniform01();
    for (auto& x : b) x = rng.uniform01();
    CHECK(ks_two_sample(a, b) < ks_two_sample_critical(4000, 4000, 0.01));
}

TEST_CASE("ks_two_sample_critical matches the tabulated coefficient") {
    // c(0.05) = 1.358
    CHECK(ks_two_sample_critical(100, 100, 0.05) ==
          doctest::Approx(1.358 * std::sqrt(200.0 / 10000.0)).epsilon(1e-3));
}

TEST_CASE("wilson_lower_bound against a hand-computed case") {
    // 80/100 at 99% one-sided: z = 2.326348
    const double z = 2.3263478740408408;
    const double n = 100.0, p = 0.8;
    const double denom = 1.0 + z * z / n;
    const double center = p + z * z / (2.0 * n);
    const double rad = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
    CHECK(wilson_lower_bound(80, 100, 0.99) ==
          doctest::Approx((center - rad) / denom).epsilon(1e-9));
    CHECK(wilson_lower_bound(0, 100, 0.99) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wilson_lower_bound(100, 100, 0.99) < 1.0);
}

TEST_CASE("spearman_rho on monotone, reversed, and tied data") {
    CHECK(spearman_rho({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman_rho({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
    // monotone through ties still correlates positively
    CHECK(spearman_rho({1, 1, 2, 3}, {5, 5, 6, 7}) > 0.9);
    // independent-ish data: small magnitude
    CHECK(std::abs(spearman_rho({1, 2, 3, 4, 5, 6}, {3, 1, 4, 1, 5, 9})) < 0.9);
}
