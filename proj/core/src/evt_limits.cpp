#include "imb/evt_limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "imb/datagen.hpp"
#include "imb/stats.hpp"
#include "imb/svm.hpp"

namespace imb {
namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// x^{1/alpha} through the log so small alpha does not lose the exponent.
double root_pow(double x, double alpha) {
    return std::exp(std::log(x) / alpha);
}

double clamp_lower(double v, bool& degenerate) {
    if (v < 0.0) {
        degenerate = true;
        return 0.0;
    }
    return v;
}

struct OneDExtremes {
    double pos_min = std::numeric_limits<double>::infinity();
    double neg_max = -std::numeric_limits<double>::infinity();

    bool separable() const { return neg_max < pos_min; }
};

OneDExtremes scan_1d(const Dataset& data) {
    OneDExtremes e;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double x = data.point(k)[0];
        if (data.label(k) > 0) e.pos_min = std::min(e.pos_min, x);
        else e.neg_max = std::max(e.neg_max, x);
    }
    return e;
}

std::pair<double, double> pick_constants(const EvtNormalization& norm, ConstantsKind kind) {
    if (kind == ConstantsKind::Exact) return {norm.a_n, norm.b_n};
    return {norm.a_n_asymptotic, norm.b_n_asymptotic};
}

}  // namespace

double TheoremBudget::prob_floor(Family family) const {
    if (family == Family::TwoSidedFrechet) return 1.0 - 2.0 * (epsilon + delta) - 5.0 * gamma;
    return 1.0 - 2.0 * epsilon - 2.0 * delta - 3.0 * gamma;
}

void check_budget(Family family, const TheoremBudget& budget) {
    auto in_unit = [](double p) { return p > 0.0 && p < 1.0; };
    if (!in_unit(budget.epsilon) || !in_unit(budget.delta) || !in_unit(budget.gamma)) {
        throw std::invalid_argument("check_budget: epsilon, delta, gamma must lie in (0, 1)");
    }
    const double b = budget.beta.value();
    if (!(b > 0.0 && b < 1.0)) {
        throw std::invalid_argument("check_budget: beta must lie in (0, 1)");
    }
    if (budget.n < 2) throw std::invalid_argument("check_budget: n must be >= 2");
    budget.beta.times_integral(budget.n);  // throws unless integral
    if (!(budget.prob_floor(family) > 0.0)) {
        throw std::invalid_argument("check_budget: probability floor is vacuous");
    }
    if (family == Family::TwoSidedFrechet && !(budget.alpha > 0.0)) {
        throw std::invalid_argument("check_budget: alpha must be positive");
    }
    if (family == Family::Gaussian) {
        const double dn = static_cast<double>(budget.n);
        if (b < std::pow(dn, -0.75)) {
            throw std::invalid_argument("check_budget: gaussian requires beta >= n^(-3/4)");
        }
        if (dn * b * b < budget.epsilon) {
            throw std::invalid_argument("check_budget: gaussian requires n beta^2 >= epsilon");
        }
    }
}

BoundSet bounds_laplace(const TheoremBudget& budget) {
    check_budget(Family::Laplace, budget);
    const double b = budget.beta.value();
    const double g = budget.gamma;
    const double dn = static_cast<double>(budget.n);
    BoundSet out;
    out.prob_floor = budget.prob_floor(Family::Laplace);
    out.erm_theta_lower = clamp_lower(0.5 * (std::log(1.0 / b) - std::log(1.0 / g)), out.degenerate);
    out.sub_theta_upper = 0.5 * std::log(1.0 / g);
    out.erm_wce_lower = clamp_lower(budget.epsilon * std::sqrt(g) / (2.0 * dn * std::sqrt(b)),
                                    out.degenerate);
    out.sub_wce_upper = budget.epsilon / (dn * std::sqrt(g));
    return out;
}

BoundSet bounds_gaussian(const TheoremBudget& budget) {
    check_budget(Family::Gaussian, budget);
    const double b = budget.beta.value();
    const double g = budget.gamma;
    const double dn = static_cast<double>(budget.n);
    const double denom = 2.0 * std::sqrt(2.0 * std::log(b * dn));
    BoundSet out;
    out.prob_floor = budget.prob_floor(Family::Gaussian);
    out.erm_theta_lower =
        clamp_lower(((2.0 / 3.0) * std::log(1.0 / b) - 2.0 * std::log(1.0 / g)) / denom,
                    out.degenerate);
    out.sub_theta_upper = std::log(1.0 / g) / denom;
    out.sub_wce_upper = 2.0 * budget.epsilon / (g * dn);
    out.erm_wce_lower = clamp_lower(
        budget.epsilon * std::pow(g, 0.25) / (2.0 * dn * std::pow(b, 1.0 / 12.0)), out.degenerate);
    return out;
}

BoundSet bounds_frechet(const TheoremBudget& budget) {
    check_budget(Family::TwoSidedFrechet, budget);
    const double b = budget.beta.value();
    const double g = budget.gamma;
    const double e = budget.epsilon;
    const double a = budget.alpha;
    const double dn = static_cast<double>(budget.n);
    BoundSet out;
    out.prob_floor = budget.prob_floor(Family::TwoSidedFrechet);
    const double sub_scale = 0.5 * root_pow(dn * b / g, a);
    out.sub_theta_upper = sub_scale;
    out.erm_theta_lower =
        clamp_lower(0.5 * root_pow(dn / std::log(1.0 / g), a) - sub_scale, out.degenerate);
    const double r_sub = 0.5 * root_pow(2.0 * e * b / g, a);
    const double r_erm = 0.5 * root_pow(2.0 * e / std::log(1.0 / g), a);
    out.sub_wce_upper = (e / dn) / std::pow(1.0 - r_sub, a);
    out.erm_wce_lower = clamp_lower(
        (e / dn) * (1.0 - std::exp(-1.0)) / std::pow(1.0 - r_erm + r_sub, a), out.degenerate);
    return out;
}

BoundSet bounds_for(Family family, const TheoremBudget& budget) {
    switch (family) {
        case Family::Laplace: return bounds_laplace(budget);
        case Family::Gaussian: return bounds_gaussian(budget);
        case Family::TwoSidedFrechet: return bounds_frechet(budget);
        case Family::Uniform:
            throw std::invalid_argument("bounds_for: the uniform statement has no bound set");
    }
    throw std::invalid_argument("bounds_for: unknown family");
}

double limit_theta_sub(const EvtNormalization& norm_beta_n, ConstantsKind kind, RngStream& rng) {
    const auto [a_bn, b_bn] = pick_constants(norm_beta_n, kind);
    (void)b_bn;
    const double z1 = sample_limit(norm_beta_n, rng);
    const double z2 = sample_limit(norm_beta_n, rng);
    return 0.5 * a_bn * (z1 - z2);
}

double limit_theta_erm(const EvtNormalization& norm_n, const EvtNormalization& norm_beta_n,
                       ConstantsKind kind, RngStream& rng) {
    if (norm_n.tail_type != norm_beta_n.tail_type) {
        throw std::invalid_argument("limit_theta_erm: mismatched tail types");
    }
    const auto [a_bn, b_bn] = pick_constants(norm_beta_n, kind);
    const auto [a_n, b_n] = pick_constants(norm_n, kind);
    const double z3 = sample_limit(norm_beta_n, rng);
    const double z4 = sample_limit(norm_n, rng);
    return 0.5 * (b_bn - b_n + a_bn * z3 - a_n * z4);
}

ValidationReport validate_theorem(Family family, const TheoremBudget& budget, std::size_t trials,
                                  std::uint64_t seed, const ValidateOptions& opts) {
    if (trials < 100) throw std::invalid_argument("validate_theorem: need at least 100 trials");

    ValidationReport report;
    report.family = family;
    report.budget = budget;
    report.seed = seed;
    report.trials = trials;
    report.prob_floor = 0.0;

    const double mu_n = mu_schedule(family, budget.n, budget.epsilon, budget.alpha);
    GenRecipe recipe = make_recipe(family, mu_n, 1, budget.alpha);
    recipe.epsilon = budget.epsilon;

    if (family == Family::Uniform) {
        // Distributional convergence statement: compare the two threshold
        // samples directly instead of testing a probability floor.
        std::vector<double> erm, sub;
        erm.reserve(trials);
        sub.reserve(trials);
        double sum_wce_erm = 0.0, sum_wce_sub = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            RngStream rng = RngStream::child(seed, t);
            const Dataset data = generate(recipe, budget.n, budget.beta, rng);
            const OneDExtremes full = scan_1d(data);
            if (!full.separable()) {
                ++report.non_separable_count;
                continue;
            }
            const LinearModel m_erm = solve_svm_1d(full.neg_max, full.pos_min);
            const Dataset small = subsample_majority(data, rng);
            const OneDExtremes part = scan_1d(small);
            const LinearModel m_sub = solve_svm_1d(part.neg_max, part.pos_min);
            erm.push_back(m_erm.theta);
            sub.push_back(m_sub.theta);
            sum_wce_erm += wce_analytic(recipe, m_erm);
            sum_wce_sub += wce_analytic(recipe, m_sub);
        }
        if (erm.size() < 2) throw std::runtime_error("validate_theorem: no separable draws");
        report.ks_stat = ks_two_sample(erm, sub);
        report.ks_threshold = opts.ks_threshold;
        report.passed = report.ks_stat <= opts.ks_threshold;
        report.mean_theta_erm = mean_std(erm).mean;
        report.mean_theta_sub = mean_std(sub).mean;
        report.mean_wce_erm = sum_wce_erm / static_cast<double>(erm.size());
        report.mean_wce_sub = sum_wce_sub / static_cast<double>(sub.size());
        return report;
    }

    report.bounds = bounds_for(family, budget);
    report.prob_floor = report.bounds.prob_floor;

    double sum_theta_erm = 0.0, sum_theta_sub = 0.0;
    double sum_wce_erm = 0.0, sum_wce_sub = 0.0;
    std::size_t separable_trials = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng = RngStream::child(seed, t);
        const Dataset data = generate(recipe, budget.n, budget.beta, rng);
        const OneDExtremes full = scan_1d(data);
        if (!full.separable()) {
            ++report.non_separable_count;
            continue;  // counts against the event, inside the epsilon budget
        }
        ++separable_trials;
        const LinearModel m_erm = solve_svm_1d(full.neg_max, full.pos_min);
        const Dataset small = subsample_majority(data, rng);
        const OneDExtremes part = scan_1d(small);
        const LinearModel m_sub = solve_svm_1d(part.neg_max, part.pos_min);

        sum_theta_erm += m_erm.theta;
        sum_theta_sub += m_sub.theta;
        const double wce_erm = wce_analytic(recipe, m_erm);
        const double wce_sub = wce_analytic(recipe, m_sub);
        sum_wce_erm += wce_erm;
        sum_wce_sub += wce_sub;

        const bool event = std::fabs(m_erm.theta) >= report.bounds.erm_theta_lower &&
                           std::fabs(m_sub.theta) <= report.bounds.sub_theta_upper;
        if (event) {
            ++report.event_hits;
            if (wce_sub <= report.bounds.sub_wce_upper && wce_erm >= report.bounds.erm_wce_lower) {
                ++report.wce_bracket_hits;
            }
        }
    }

    const double dt = static_cast<double>(trials);
    report.empirical_freq = static_cast<double>(report.event_hits) / dt;
    report.wce_bracket_freq = static_cast<double>(report.wce_bracket_hits) / dt;
    report.wilson_lower = wilson_lower_bound(report.event_hits, trials, opts.confidence);
    report.wilson_slack = report.empirical_freq - report.wilson_lower;
    report.passed = report.empirical_freq >= report.prob_floor - report.wilson_slack;
    report.insufficient_trials = report.wilson_slack > 1.0 - report.prob_floor;
    if (separable_trials > 0) {
        report.mean_theta_erm = sum_theta_erm / static_cast<double>(separable_trials);
        report.mean_theta_sub = sum_theta_sub / static_cast<double>(separable_trials);
        report.mean_wce_erm = sum_wce_erm / static_cast<double>(separable_trials);
        report.mean_wce_sub = sum_wce_sub / static_cast<double>(separable_trials);
    }
    return report;
}

std::string report_to_json(const ValidationReport& r) {
    nlohmann::json j;
    j["family"] = family_name(r.family);
    j["budget"] = {
        {"epsilon", r.budget.epsilon}, {"delta", r.budget.delta}, {"gamma", r.budget.gamma},
        {"beta_num", r.budget.beta.num}, {"beta_den", r.budget.beta.den},
        {"n", r.budget.n}, {"alpha", r.budget.alpha},
    };
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["event_hits"] = r.event_hits;
    j["wce_bracket_hits"] = r.wce_bracket_hits;
    j["non_separable_count"] = r.non_separable_count;
    j["empirical_freq"] = r.empirical_freq;
    j["wce_bracket_freq"] = r.wce_bracket_freq;
    j["prob_floor"] = r.prob_floor;
    j["wilson_lower"] = r.wilson_lower;
    j["wilson_slack"] = r.wilson_slack;
    j["passed"] = r.passed;
    j["insufficient_trials"] = r.insufficient_trials;
    j["mean_theta_erm"] = r.mean_theta_erm;
    j["mean_theta_sub"] = r.mean_theta_sub;
    j["mean_wce_erm"] = r.mean_wce_erm;
    j["mean_wce_sub"] = r.mean_wce_sub;
    if (r.family == Family::Uniform) {
        j["ks_stat"] = r.ks_stat;
        j["ks_threshold"] = r.ks_threshold;
    } else {
        j["bounds"] = {
            {"erm_theta_lower", r.bounds.erm_theta_lower},
            {"sub_theta_upper", r.bounds.sub_theta_upper},
            {"erm_wce_lower", r.bounds.erm_wce_lower},
            {"sub_wce_upper", r.bounds.sub_wce_upper},
            {"degenerate", r.bounds.degenerate},
        };
    }
    return j.dump(2);
}

double logistic_diff_cdf(double tau) {
    if (tau < 0.0) throw std::invalid_argument("logistic_diff_cdf: tau must be >= 0");
    return 1.0 - 2.0 / (1.0 + std::exp(tau));
}

std::pair<double, double> gaussian_tail_bounds(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("gaussian_tail_bounds: t must be > 0");
    const double phi = std::exp(-0.5 * t * t) / kSqrt2Pi;
    return {phi * (1.0 / t - 1.0 / (t * t * t)), phi / t};
}

std::pair<double, double> expx_sandwich(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("expx_sandwich: x must be in [0, 1]");
    return {x * (1.0 - std::exp(-1.0)), x};
}

bool shrink_to_zero_check(const std::function<double(RngStream&)>& sample_b,
                          const std::vector<double>& lambdas, double eps, std::size_t draws,
                          std::uint64_t seed, double final_threshold) {
    if (lambdas.empty() || draws == 0) {
        throw std::invalid_argument("shrink_to_zero_check: empty schedule");
    }
    std::vector<double> exceedance;
    exceedance.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 0.0)) {
            throw std::invalid_argument("shrink_to_zero_check: lambdas must be nonnegative");
        }
        RngStream rng = RngStream::child(seed, i);
        std::size_t hits = 0;
        for (std::size_t k = 0; k < draws; ++k) {
            if (lambdas[i] * std::fabs(sample_b(rng)) >= eps) ++hits;
        }
        exceedance.push_back(static_cast<double>(hits) / static_cast<double>(draws));
    }
    // Two-sigma allowance for Monte Carlo noise in the monotonicity check.
    const double noise = 2.0 / std::sqrt(static_cast<double>(draws));
    for (std::size_t i = 1; i < exceedance.size(); ++i) {
        if (exceedance[i] > exceedance[i - 1] + noise) return false;
    }
    return exceedance.back() <= final_threshold;
}

}  // namespace imb
