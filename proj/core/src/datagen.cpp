#include "imb/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "imb/erf.hpp"

namespace imb {
namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

double gaussian_mu_residual(double mu, double target) {
    return std::exp(-0.5 * mu * mu) / (kSqrt2Pi * mu) - target;
}

// Floyd's algorithm: uniform k-subset of {0, ..., n-1} without replacement.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, RngStream& rng) {
    std::unordered_set<std::size_t> seen;
    std::vector<std::size_t> picks;
    picks.reserve(k);
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng.below(j + 1));
        if (seen.insert(t).second) picks.push_back(t);
        else { seen.insert(j); picks.push_back(j); }
    }
    return picks;
}

}  // namespace

GenRecipe make_recipe(Family family, double mu_n, int dim, double alpha) {
    GenRecipe r;
    r.family = family;
    r.mu_n = mu_n;
    r.dim = dim;
    r.alpha = alpha;
    r.scale = default_scale(family);
    return r;
}

double mu_schedule(Family family, std::uint64_t n, double epsilon, double alpha) {
    if (n < 2) throw std::invalid_argument("mu_schedule: n must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("mu_schedule: epsilon must lie in (0, 1)");
    }
    const double dn = static_cast<double>(n);
    switch (family) {
        case Family::Uniform:
            return 0.5;
        case Family::Laplace:
            return std::log(dn / epsilon);
        case Family::TwoSidedFrechet:
            return std::pow(dn / (2.0 * epsilon), 1.0 / alpha);
        case Family::Gaussian: {
            // exp(-mu^2/2) / (sqrt(2 pi) mu) is strictly decreasing for mu > 0,
            // so bisection on [1, sqrt(2 log(n/eps)) + 2] brackets the root.
            const double target = epsilon / dn;
            double lo = 1.0, hi = std::sqrt(2.0 * std::log(dn / epsilon)) + 2.0;
            if (!(gaussian_mu_residual(lo, target) > 0.0) ||
                !(gaussian_mu_residual(hi, target) < 0.0)) {
                throw std::runtime_error("mu_schedule: gaussian bracket invalid");
            }
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double r = gaussian_mu_residual(mid, target);
                if (std::fabs(r) <= 1e-12 * std::max(target, 1.0)) { lo = hi = mid; break; }
                (r > 0.0 ? lo : hi) = mid;
                if (hi - lo < 1e-15 * hi) break;
            }
            const double mu = 0.5 * (lo + hi);
            if (std::fabs(gaussian_mu_residual(mu, target)) > 1e-12) {
                throw std::runtime_error("mu_schedule: gaussian root did not converge");
            }
            return mu;
        }
    }
    return 0.0;
}

Dataset generate(const GenRecipe& recipe, std::size_t n, Rational beta, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
    const std::size_t n_minor = beta.times_integral(n);
    const int d = recipe.dim;
    const DistributionSpec noise = recipe.noise();

    Dataset data;
    data.dim = d;
    data.n_major = n;
    data.beta = beta;
    data.xs.reserve((n + n_minor) * static_cast<std::size_t>(d));
    data.ys.reserve(n + n_minor);

    for (std::size_t i = 0; i < n; ++i) {
        data.xs.push_back(recipe.mu_n + sample_one(noise, rng));
        for (int q = 1; q < d; ++q) data.xs.push_back(sample_one(noise, rng));
        data.ys.push_back(+1);
    }
    for (std::size_t i = 0; i < n_minor; ++i) {
        data.xs.push_back(-recipe.mu_n + sample_one(noise, rng));
        for (int q = 1; q < d; ++q) data.xs.push_back(sample_one(noise, rng));
        data.ys.push_back(-1);
    }
    return data;
}

Dataset subsample_majority_to(const Dataset& data, std::size_t keep_major, RngStream& rng) {
    const std::size_t n_minor = data.minority_count();
    if (keep_major < n_minor || keep_major > data.n_major) {
        throw std::invalid_argument("subsample_majority_to: size outside [minority, majority]");
    }

    // Majority (+1) examples come first by construction; locate them anyway
    // so hand-built datasets also work.
    std::vector<std::size_t> majority_rows;
    majority_rows.reserve(data.n_major);
    std::vector<std::size_t> minority_rows;
    minority_rows.reserve(n_minor);
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.label(i) > 0 ? majority_rows : minority_rows).push_back(i);
    }

    std::vector<std::size_t> picks = sample_indices(majority_rows.size(), keep_major, rng);
    std::sort(picks.begin(), picks.end());

    Dataset out;
    out.dim = data.dim;
    out.n_major = keep_major;
    out.beta = Rational(static_cast<long long>(n_minor), static_cast<long long>(keep_major));
    out.xs.reserve((keep_major + n_minor) * static_cast<std::size_t>(data.dim));
    out.ys.reserve(keep_major + n_minor);
    auto copy_row = [&](std::size_t row) {
        const auto p = data.point(row);
        out.xs.insert(out.xs.end(), p.begin(), p.end());
        out.ys.push_back(data.ys[row]);
    };
    for (std::size_t pick : picks) copy_row(majority_rows[pick]);
    for (std::size_t row : minority_rows) copy_row(row);
    return out;
}

Dataset subsample_majority(const Dataset& data, RngStream& rng) {
    return subsample_majority_to(data, data.minority_count(), rng);
}

std::pair<double, double> class_errors_analytic(const GenRecipe& recipe, const LinearModel& model) {
    if (static_cast<int>(model.w.size()) != recipe.dim) {
        throw std::invalid_argument("class_errors_analytic: dimension mismatch");
    }
    double norm2 = 0.0;
    for (double v : model.w) norm2 += v * v;
    const double wnorm = std::sqrt(norm2);
    if (!(wnorm > 0.0)) throw std::invalid_argument("class_errors_analytic: zero direction");

    const double shift = model.w[0] * recipe.mu_n;  // w . mu with mu along e1
    double pos_err, neg_err;
    if (recipe.dim == 1) {
        const DistributionSpec noise = recipe.noise();
        // P(w xi < s) through the scalar marginal; w < 0 flips the tail.
        auto prob_lt = [&](double s) {
            const double z = s / model.w[0];
            return model.w[0] > 0.0 ? cdf(noise, z) : 1.0 - cdf(noise, z);
        };
        pos_err = prob_lt(-model.b - shift);
        neg_err = 1.0 - prob_lt(-model.b + shift);
    } else {
        if (recipe.family != Family::Gaussian) {
            throw std::invalid_argument(
                "class_errors_analytic: closed form beyond d=1 needs Gaussian noise");
        }
        const double sd = recipe.scale * wnorm;
        pos_err = norm_cdf((-model.b - shift) / sd);
        neg_err = norm_cdf((model.b - shift) / sd);
    }
    return {pos_err, neg_err};
}

double wce_analytic(const GenRecipe& recipe, const LinearModel& model) {
    const auto [pos_err, neg_err] = class_errors_analytic(recipe, model);
    return std::max(pos_err, neg_err);
}

double avg_error_analytic(const GenRecipe& recipe, const LinearModel& model, double beta) {
    const auto [pos_err, neg_err] = class_errors_analytic(recipe, model);
    return (pos_err + beta * neg_err) / (1.0 + beta);
}

double wce_empirical(const GenRecipe& recipe, const LinearModel& model, std::size_t m,
                     RngStream& rng) {
    if (m < 1) throw std::invalid_argument("wce_empirical: m must be >= 1");
    const int d = recipe.dim;
    const DistributionSpec noise = recipe.noise();
    std::vector<double> x(d);
    std::size_t pos_miss = 0, neg_miss = 0;
    for (std::size_t i = 0; i < m; ++i) {
        x[0] = recipe.mu_n + sample_one(noise, rng);
        for (int q = 1; q < d; ++q) x[q] = sample_one(noise, rng);
        if (model.decision(x) < 0.0) ++pos_miss;
    }
    for (std::size_t i = 0; i < m; ++i) {
        x[0] = -recipe.mu_n + sample_one(noise, rng);
        for (int q = 1; q < d; ++q) x[q] = sample_one(noise, rng);
        if (model.decision(x) > 0.0) ++neg_miss;
    }
    const double dm = static_cast<double>(m);
    return std::max(pos_miss / dm, neg_miss / dm);
}

}  // namespace imb
