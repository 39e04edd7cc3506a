#include "imb/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imb/erf.hpp"

namespace imb {
namespace {

void check_spec(const DistributionSpec& spec) {
    if (!(spec.scale > 0.0)) throw std::invalid_argument("DistributionSpec: scale must be > 0");
    if (spec.family == Family::TwoSidedFrechet && !(spec.alpha > 0.0)) {
        throw std::invalid_argument("DistributionSpec: alpha must be > 0");
    }
}

// Adaptive Simpson on [a, b].
double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48);
}

double frechet_upper_quantile(double q, double alpha) {
    // Solves 1/2 + 1/2 exp(-x^{-alpha}) = 1/2 + q/2 for the centered family,
    // i.e. x = (-log q)^{-1/alpha}, q in (0, 1).
    return std::pow(-std::log(q), -1.0 / alpha);
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Uniform: return "uniform";
        case Family::Gaussian: return "gaussian";
        case Family::Laplace: return "laplace";
        case Family::TwoSidedFrechet: return "frechet";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "uniform") return Family::Uniform;
    if (name == "gaussian") return Family::Gaussian;
    if (name == "laplace") return Family::Laplace;
    if (name == "frechet") return Family::TwoSidedFrechet;
    throw std::invalid_argument("family_from_name: unknown family '" + name + "'");
}

const char* tail_type_name(TailType t) {
    switch (t) {
        case TailType::Frechet: return "frechet";
        case TailType::Weibull: return "weibull";
        case TailType::Gumbel: return "gumbel";
    }
    return "?";
}

double default_scale(Family f) { return f == Family::Uniform ? 0.5 : 1.0; }

double cdf(const DistributionSpec& spec, double x) {
    check_spec(spec);
    const double z = (x - spec.mu) / spec.scale;
    switch (spec.family) {
        case Family::Uniform:
            return std::clamp(0.5 * (z + 1.0), 0.0, 1.0);
        case Family::Gaussian:
            return norm_cdf(z);
        case Family::Laplace:
            return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
        case Family::TwoSidedFrechet: {
            const double t = x - spec.mu;  // scale fixed to 1 for this family
            if (t >= 0.0) return 0.5 + 0.5 * std::exp(-std::pow(t, -spec.alpha));
            return 0.5 - 0.5 * std::exp(-std::pow(-t, -spec.alpha));
        }
    }
    return 0.0;
}

double quantile(const DistributionSpec& spec, double p) {
    check_spec(spec);
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in (0, 1)");
    switch (spec.family) {
        case Family::Uniform:
            return spec.mu + spec.scale * (2.0 * p - 1.0);
        case Family::Gaussian:
            return spec.mu + spec.scale * norm_quantile(p);
        case Family::Laplace:
            return p < 0.5 ? spec.mu + spec.scale * std::log(2.0 * p)
                           : spec.mu - spec.scale * std::log(2.0 * (1.0 - p));
        case Family::TwoSidedFrechet:
            if (p >= 0.5) return spec.mu + frechet_upper_quantile(2.0 * p - 1.0, spec.alpha);
            return spec.mu - frechet_upper_quantile(1.0 - 2.0 * p, spec.alpha);
    }
    return 0.0;
}

double sample_one(const DistributionSpec& spec, RngStream& rng) {
    // Inverse transform, so samples and the CDF are consistent by construction.
    return quantile(spec, rng.uniform01());
}

std::vector<double> sample(const DistributionSpec& spec, RngStream& rng, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_one(spec, rng));
    return out;
}

double tail_function(const DistributionSpec& spec, double t) {
    if (!(t > 1.0)) throw std::domain_error("tail_function: t must be > 1");
    return quantile(spec, 1.0 - 1.0 / t);
}

double gumbel_aux_g_numeric(const DistributionSpec& spec, double t) {
    const DistributionSpec c = spec.centered();
    const auto tail = [&](double u) { return 1.0 - cdf(c, u); };
    const double denom = tail(t);
    if (!(denom > 0.0)) throw std::domain_error("gumbel_aux_g: t at or beyond right endpoint");
    // Integrate the tail in doubling segments until the contribution vanishes.
    double total = 0.0;
    double a = t;
    double width = std::max(1.0, spec.scale);
    for (int seg = 0; seg < 64; ++seg) {
        const double b = a + width;
        const double piece = integrate(tail, a, b, 1e-12 * std::max(denom, 1e-300));
        total += piece;
        if (piece < 1e-16 * std::max(total, 1e-300) || tail(b) == 0.0) break;
        a = b;
        width *= 2.0;
    }
    return total / denom;
}

double gumbel_aux_g(const DistributionSpec& spec, double t) {
    if (spec.family == Family::Laplace) return spec.scale;  // memoryless upper tail
    return gumbel_aux_g_numeric(spec, t);
}

EvtNormalization evt_constants(const DistributionSpec& spec, std::uint64_t n) {
    check_spec(spec);
    if (n < 2) throw std::domain_error("evt_constants: n must be >= 2");
    const DistributionSpec c = spec.centered();
    const double dn = static_cast<double>(n);
    const double un = tail_function(c, dn);
    EvtNormalization norm;
    norm.n = n;
    switch (spec.family) {
        case Family::Uniform: {
            norm.tail_type = TailType::Weibull;
            norm.alpha = 1.0;
            norm.x_f = RightEndpoint::at(c.scale);
            norm.a_n = c.scale - un;  // = 2*scale/n
            norm.b_n = c.scale;
            // The closest printed closed form matches the tail function itself;
            // there is no simpler asymptotic sequence for this family.
            norm.a_n_asymptotic = 2.0 * c.scale / dn;
            norm.b_n_asymptotic = c.scale;
            break;
        }
        case Family::Gaussian: {
            norm.tail_type = TailType::Gumbel;
            norm.alpha = 1.0;
            norm.x_f = RightEndpoint::infinite();
            norm.b_n = un;
            norm.a_n = gumbel_aux_g(c, un);
            const double l = std::log(dn);
            const double log_4pi = 2.5310242469692907929778915942694;
            norm.a_n_asymptotic = c.scale / std::sqrt(2.0 * l);
            norm.b_n_asymptotic =
                c.scale * (std::sqrt(2.0 * l) - (std::log(l) + log_4pi) / std::sqrt(2.0 * l));
            break;
        }
        case Family::Laplace: {
            norm.tail_type = TailType::Gumbel;
            norm.alpha = 1.0;
            norm.x_f = RightEndpoint::infinite();
            norm.b_n = un;  // = scale * log(n/2)
            norm.a_n = gumbel_aux_g(c, un);
            norm.a_n_asymptotic = c.scale;
            norm.b_n_asymptotic = c.scale * std::log(dn);
            break;
        }
        case Family::TwoSidedFrechet: {
            norm.tail_type = TailType::Frechet;
            norm.alpha = spec.alpha;
            norm.x_f = RightEndpoint::infinite();
            norm.a_n = un;
            norm.b_n = 0.0;
            norm.a_n_asymptotic = std::pow(dn, 1.0 / spec.alpha);
            norm.b_n_asymptotic = 0.0;
            break;
        }
    }
    return norm;
}

double limit_cdf(const EvtNormalization& norm, double x) {
    switch (norm.tail_type) {
        case TailType::Frechet:
            if (x <= 0.0) return 0.0;
            return std::exp(-std::pow(x, -norm.alpha));
        case TailType::Weibull:
            if (x >= 0.0) return 1.0;
            return std::exp(-std::pow(-x, norm.alpha));
        case TailType::Gumbel:
            return std::exp(-std::exp(-x));
    }
    return 0.0;
}

double sample_limit(const EvtNormalization& norm, RngStream& rng) {
    const double u = rng.uniform01();
    switch (norm.tail_type) {
        case TailType::Frechet:
            return std::pow(-std::log(u), -1.0 / norm.alpha);
        case TailType::Weibull:
            return -std::pow(-std::log(u), 1.0 / norm.alpha);
        case TailType::Gumbel:
            return -std::log(-std::log(u));
    }
    return 0.0;
}

}  // namespace imb
