#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace imb {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1 denominator)
    std::size_t count = 0;
};

MeanStd mean_std(const std::vector<double>& xs);

// sup_x |F_hat(x) - F(x)| for a continuous reference CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance between empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value c(level) * sqrt((m + n) / (m n)); level is the
// rejection probability (e.g. 0.05 -> c = 1.358).
double ks_two_sample_critical(std::size_t m, std::size_t n, double level);

// Lower confidence bound for a binomial proportion (Wilson score interval,
// one-sided). confidence is e.g. 0.99.
double wilson_lower_bound(std::size_t successes, std::size_t trials, double confidence);

// Spearman rank correlation; midranks for ties.
double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace imb
