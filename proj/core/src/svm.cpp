#include "imb/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace imb {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

struct SmoResult {
    std::vector<double> w;
    std::vector<double> alpha;
    double b = 0.0;
    double kkt = 0.0;
    long long iterations = 0;
    bool converged = false;
    bool hit_cap = false;
};

// Two-multiplier coordinate ascent on the dual of the soft-margin program,
// box [0, c], equality constraint sum alpha_i y_i = 0 maintained by moving
// along alpha_i += y_i t, alpha_j -= y_j t. Selection is the most violating
// pair with first-index tie-break, so runs are reproducible.
SmoResult smo(const Dataset& data, double c, double tol, long long max_iter,
              double bail_alpha = std::numeric_limits<double>::infinity(),
              double dual_cap = std::numeric_limits<double>::infinity()) {
    const std::size_t n = data.size();
    const int d = data.dim;
    SmoResult res;
    res.w.assign(d, 0.0);
    res.alpha.assign(n, 0.0);

    std::vector<double> sqnorm(n);
    for (std::size_t k = 0; k < n; ++k) sqnorm[k] = dot(data.point(k), data.point(k));

    // For small problems keep the Gram matrix and the decision values w.x_k
    // so a pair update costs O(n) instead of O(n d). Above the memory cutoff
    // fall back to recomputing w.x_k during selection.
    const bool cached = n * n * sizeof(double) <= std::size_t{64} << 20;
    std::vector<double> gram;
    std::vector<double> f(n, 0.0);
    if (cached) {
        gram.resize(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b2 = 0; b2 <= a; ++b2) {
                gram[a * n + b2] = gram[b2 * n + a] = dot(data.point(a), data.point(b2));
            }
        }
    }

    double m_val = 0.0, big_m_val = 0.0;
    double sum_alpha = 0.0;
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        // Selection pass: v_k = y_k - w.x_k is the feasible-b estimate at k.
        m_val = -std::numeric_limits<double>::infinity();
        big_m_val = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t k = 0; k < n; ++k) {
            const double fk = cached ? f[k] : dot(res.w, data.point(k));
            const double vk = static_cast<double>(data.label(k)) - fk;
            const bool up = data.label(k) > 0 ? res.alpha[k] < c : res.alpha[k] > 0.0;
            const bool low = data.label(k) > 0 ? res.alpha[k] > 0.0 : res.alpha[k] < c;
            if (up && vk > m_val) { m_val = vk; i = k; }
            if (low && vk < big_m_val) { big_m_val = vk; j = k; }
        }
        if (i == n || j == n || m_val - big_m_val <= tol) {
            res.converged = true;
            break;
        }

        const auto xi = data.point(i);
        const auto xj = data.point(j);
        const int yi = data.label(i), yj = data.label(j);
        double eta = sqnorm[i] + sqnorm[j] - 2.0 * dot(xi, xj);
        eta = std::max(eta, 1e-12);
        double t = (m_val - big_m_val) / eta;

        // Box limits along the feasible direction.
        double t_hi = std::numeric_limits<double>::infinity();
        double t_lo = -std::numeric_limits<double>::infinity();
        if (yi > 0) { t_hi = std::min(t_hi, c - res.alpha[i]); t_lo = std::max(t_lo, -res.alpha[i]); }
        else        { t_hi = std::min(t_hi, res.alpha[i]); t_lo = std::max(t_lo, res.alpha[i] - c); }
        if (yj > 0) { t_hi = std::min(t_hi, res.alpha[j]); t_lo = std::max(t_lo, res.alpha[j] - c); }
        else        { t_hi = std::min(t_hi, c - res.alpha[j]); t_lo = std::max(t_lo, -res.alpha[j]); }
        t = std::clamp(t, t_lo, t_hi);
        if (t == 0.0) { res.converged = true; break; }

        sum_alpha += (yi > 0 ? t : -t) - (yj > 0 ? t : -t);
        res.alpha[i] += yi > 0 ? t : -t;
        res.alpha[j] -= yj > 0 ? t : -t;
        for (int k = 0; k < d; ++k) res.w[k] += t * (xi[k] - xj[k]);
        if (cached) {
            const double* gi = gram.data() + i * n;
            const double* gj = gram.data() + j * n;
            for (std::size_t k = 0; k < n; ++k) f[k] += t * (gi[k] - gj[k]);
        }
        if (res.alpha[i] >= bail_alpha || res.alpha[j] >= bail_alpha) {
            res.hit_cap = true;
            break;
        }
        if (sum_alpha - 0.5 * dot(res.w, res.w) > dual_cap) {
            res.hit_cap = true;
            break;
        }
    }

    res.kkt = (m_val > big_m_val) ? m_val - big_m_val : 0.0;
    // b sits midway between the tightest feasibility bounds from both sides.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double vk = static_cast<double>(data.label(k)) - dot(res.w, data.point(k));
        const bool up = data.label(k) > 0 ? res.alpha[k] < c : res.alpha[k] > 0.0;
        const bool low = data.label(k) > 0 ? res.alpha[k] > 0.0 : res.alpha[k] < c;
        if (up) lo = std::max(lo, vk);
        if (low) hi = std::min(hi, vk);
    }
    res.b = 0.5 * (lo + hi);
    return res;
}

LinearModel finish_model(const Dataset& data, SmoResult&& res) {
    LinearModel model;
    model.w = std::move(res.w);
    model.b = res.b;
    model.kkt_violation = res.kkt;
    model.iterations = res.iterations;

    const double wnorm = std::sqrt(dot(model.w, model.w));
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double m = data.label(k) * (dot(model.w, data.point(k)) + model.b);
        min_margin = std::min(min_margin, m);
    }
    model.margin = wnorm > 0.0 ? min_margin / wnorm : 0.0;
    model.theta = (data.dim == 1 && model.w[0] != 0.0) ? -model.b / model.w[0] : 0.0;
    return model;
}

double equalizing_b(const Dataset& data, std::span<const double> w) {
    double pos_min = std::numeric_limits<double>::infinity();
    double neg_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double f = dot(w, data.point(k));
        if (data.label(k) > 0) pos_min = std::min(pos_min, f);
        else neg_max = std::max(neg_max, f);
    }
    if (!(neg_max < pos_min)) throw NotSeparable("projected classes interleave");
    return -0.5 * (neg_max + pos_min);
}

}  // namespace

double LinearModel::decision(std::span<const double> x) const {
    return dot(w, x) + b;
}

LinearModel solve_svm_1d(double neg_max, double pos_min) {
    if (!(neg_max < pos_min)) {
        throw NotSeparable("solve_svm_1d: requires neg_max < pos_min");
    }
    LinearModel model;
    model.w = {1.0};
    model.theta = 0.5 * (neg_max + pos_min);
    model.b = -model.theta;
    model.margin = 0.5 * (pos_min - neg_max);
    return model;
}

LinearModel train_hard_svm(const Dataset& data, const SvmOptions& opts) {
    if (data.size() < 2) throw std::invalid_argument("train_hard_svm: need both classes");
    // Multipliers reaching the box bound mean the dual diverges: no
    // zero-slack separator exists. Bail as soon as one gets there.
    const double cap = 0.999999 * opts.hard_c;
    const double dual_cap = 0.5 / (opts.min_margin * opts.min_margin);
    SmoResult res = smo(data, opts.hard_c, opts.tol, opts.max_iter, cap, dual_cap);
    if (res.hit_cap) throw NotSeparable("train_hard_svm: dual value past the margin certificate");
    for (double a : res.alpha) {
        if (a >= cap) throw NotSeparable("train_hard_svm: dual multiplier at cap");
    }
    if (!res.converged) throw IterationLimit("train_hard_svm: pair-update budget exhausted");
    // Re-center b so both classes attain the same minimum functional margin.
    res.b = equalizing_b(data, res.w);
    LinearModel model = finish_model(data, std::move(res));
    if (model.margin <= 0.0) throw NotSeparable("train_hard_svm: nonpositive margin");
    return model;
}

LinearModel train_soft_svm(const Dataset& data, double c, const SvmOptions& opts) {
    if (!(c > 0.0)) throw std::invalid_argument("train_soft_svm: c must be > 0");
    SmoResult res = smo(data, c, opts.tol, opts.max_iter);
    if (!res.converged) throw IterationLimit("train_soft_svm: pair-update budget exhausted");
    return finish_model(data, std::move(res));
}

LinearModel train_logistic(const Dataset& data, long long steps, double step_size) {
    if (steps < 1) throw std::invalid_argument("train_logistic: steps must be >= 1");
    const std::size_t n = data.size();
    const int d = data.dim;
    std::vector<double> w(d, 0.0);
    double b = 0.0;
    std::vector<double> grad(d);
    const double inv_n = 1.0 / static_cast<double>(n);

    for (long long s = 0; s < steps; ++s) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto x = data.point(k);
            const double u = data.label(k) * (dot(w, x) + b);
            const double p = 1.0 / (1.0 + std::exp(u));  // sigmoid(-u)
            const double coeff = -p * data.label(k) * inv_n;
            for (int q = 0; q < d; ++q) grad[q] += coeff * x[q];
            grad_b += coeff;
        }
        for (int q = 0; q < d; ++q) w[q] -= step_size * grad[q];
        b -= step_size * grad_b;
        if (!std::isfinite(b) || !std::isfinite(w[0])) {
            throw NonFinite("train_logistic: parameters overflowed");
        }
    }

    double loss = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    const double wnorm = std::sqrt(dot(w, w));
    for (std::size_t k = 0; k < n; ++k) {
        const double u = data.label(k) * (dot(w, data.point(k)) + b);
        loss += (u > 0.0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u))) * inv_n;
        min_margin = std::min(min_margin, u);
    }
    if (!std::isfinite(loss)) throw NonFinite("train_logistic: loss overflowed");

    LinearModel model;
    model.w = std::move(w);
    model.b = b;
    model.margin = wnorm > 0.0 ? min_margin / wnorm : 0.0;
    model.theta = (d == 1 && model.w[0] != 0.0) ? -model.b / model.w[0] : 0.0;
    model.iterations = steps;
    return model;
}

double offset_for_direction(const Dataset& data, std::span<const double> w) {
    double norm2 = 0.0;
    for (double v : w) norm2 += v * v;
    if (!(norm2 > 0.0)) throw std::invalid_argument("offset_for_direction: w must be nonzero");
    return equalizing_b(data, w);
}

bool is_separable(const Dataset& data) {
    if (data.size() == 0) return false;
    if (data.dim == 1) {
        double pos_min = std::numeric_limits<double>::infinity();
        double pos_max = -std::numeric_limits<double>::infinity();
        double neg_min = std::numeric_limits<double>::infinity();
        double neg_max = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < data.size(); ++k) {
            const double x = data.point(k)[0];
            if (data.label(k) > 0) { pos_min = std::min(pos_min, x); pos_max = std::max(pos_max, x); }
            else { neg_min = std::min(neg_min, x); neg_max = std::max(neg_max, x); }
        }
        return neg_max < pos_min || pos_max < neg_min;
    }
    try {
        const LinearModel model = train_soft_svm(data, 1e8);
        for (std::size_t k = 0; k < data.size(); ++k) {
            if (data.label(k) * model.decision(data.point(k)) <= 0.0) return false;
        }
        return true;
    } catch (const IterationLimit&) {
        return false;
    }
}

}  // namespace imb
