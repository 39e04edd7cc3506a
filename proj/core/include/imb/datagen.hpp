#pragma once

#include <cstdint>
#include <utility>

#include "imb/dataset.hpp"
#include "imb/distributions.hpp"
#include "imb/svm.hpp"

namespace imb {

// Generative model: X = Y * (mu + xi) with mu = mu_n along the first basis
// vector and centered noise xi from the family. In d > 1 the noise has
// i.i.d. per-coordinate marginals (spherical for Gaussian).
struct GenRecipe {
    Family family = Family::Gaussian;
    double mu_n = 1.0;
    int dim = 1;
    double epsilon = 0.1;  // separability budget feeding the mu_n schedule
    double alpha = 1.0;    // Frechet shape
    double scale = 1.0;    // noise scale; use default_scale(family)

    DistributionSpec noise() const { return {family, 0.0, scale, alpha}; }
};

GenRecipe make_recipe(Family family, double mu_n, int dim = 1, double alpha = 1.0);

// Class-center magnitude that keeps an n-sample draw linearly separable
// with probability at least 1 - 2*epsilon:
//   Uniform  -> 1/2 (touching unit supports)
//   Laplace  -> log(n / epsilon)
//   Gaussian -> the root mu > 1 of exp(-mu^2/2) / (sqrt(2 pi) mu) = epsilon/n
//   Frechet  -> (n / (2 epsilon))^{1/alpha}
double mu_schedule(Family family, std::uint64_t n, double epsilon, double alpha = 1.0);

// n positives from D(+mu), beta*n negatives from D(-mu); beta*n must be an
// integer. Positives are stored first, then negatives.
Dataset generate(const GenRecipe& recipe, std::size_t n, Rational beta, RngStream& rng);

// Uniform subsample (without replacement) of the majority class down to the
// minority count; the minority class is untouched. Result is balanced.
Dataset subsample_majority(const Dataset& data, RngStream& rng);

// Subsample the majority down to an arbitrary size keep_major in
// [minority_count, n_major].
Dataset subsample_majority_to(const Dataset& data, std::size_t keep_major, RngStream& rng);

// Per-class misclassification probabilities (positive, negative) in closed
// form via the centered marginal CDF along w. Only the Gaussian family
// supports d > 1 (its marginal stays Gaussian); other families throw.
std::pair<double, double> class_errors_analytic(const GenRecipe& recipe, const LinearModel& model);

// Worst-class error: max of the two class errors.
double wce_analytic(const GenRecipe& recipe, const LinearModel& model);

// Class-prior-weighted average error for a test distribution with imbalance
// ratio beta (priors 1/(1+beta) and beta/(1+beta)).
double avg_error_analytic(const GenRecipe& recipe, const LinearModel& model, double beta);

// Monte Carlo worst-class error from m fresh test points per class.
double wce_empirical(const GenRecipe& recipe, const LinearModel& model, std::size_t m,
                     RngStream& rng);

}  // namespace imb
