#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "imb/dataset.hpp"

namespace imb {

struct NotSeparable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IterationLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear classifier sign(w . x + b). For one-dimensional hard-margin
// solutions w is normalized so that theta = -b is the decision threshold.
struct LinearModel {
    std::vector<double> w;
    double b = 0.0;
    double theta = 0.0;     // 1-D threshold, -b/w
    double margin = 0.0;    // geometric margin on the training data
    double kkt_violation = 0.0;
    long long iterations = 0;

    double decision(std::span<const double> x) const;
};

// Closed-form 1-D hard-margin solution: the midpoint between the largest
// negative and the smallest positive example. Requires neg_max < pos_min.
LinearModel solve_svm_1d(double neg_max, double pos_min);

struct SvmOptions {
    double tol = 1e-10;            // max KKT violation at exit
    long long max_iter = 100'000'000;  // pair updates
    double hard_c = 1e8;           // box used to realize the hard margin
    // Hard training declares the data non-separable once the dual value
    // certifies that no separator with geometric margin >= min_margin
    // exists (the dual is bounded by 1/(2 margin^2) when one does).
    // Lower it for legitimately tiny-margin problems.
    double min_margin = 1e-3;
};

// Hard-margin SVM via dual pairwise coordinate ascent (most-violating-pair
// selection). Throws NotSeparable when the data admits no zero-slack
// separator, IterationLimit when tol is not reached within the budget.
LinearModel train_hard_svm(const Dataset& data, const SvmOptions& opts = {});

// Soft-margin SVM, hinge loss with penalty c; always feasible.
LinearModel train_soft_svm(const Dataset& data, double c, const SvmOptions& opts = {});

// Unregularized logistic regression by full-batch gradient descent.
// Throws NonFinite when the loss overflows (step size too large).
LinearModel train_logistic(const Dataset& data, long long steps, double step_size);

// Offset that equalizes the two classes' minimum margins along w; equals -theta
// of the 1-D SVM on the projections. Throws NotSeparable if they interleave.
double offset_for_direction(const Dataset& data, std::span<const double> w);

// 1-D: exact interval test (strict; touching classes count as non-separable).
// d > 1: zero-training-error check with a large-c soft margin.
bool is_separable(const Dataset& data);

}  // namespace imb
