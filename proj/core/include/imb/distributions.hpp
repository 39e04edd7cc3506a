#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imb/rng.hpp"

namespace imb {

enum class Family { Uniform, Gaussian, Laplace, TwoSidedFrechet };

const char* family_name(Family f);

// Inverse of family_name; throws std::invalid_argument on unknown tokens.
Family family_from_name(const std::string& name);

// One symmetric class-conditional family.
//   mu    - center (symmetry axis)
//   scale - half-width (Uniform), std-dev (Gaussian), scale (Laplace)
//   alpha - shape, TwoSidedFrechet only
struct DistributionSpec {
    Family family = Family::Gaussian;
    double mu = 0.0;
    double scale = 1.0;
    double alpha = 1.0;

    DistributionSpec centered() const { return {family, 0.0, scale, alpha}; }
};

// Conventional half-width/scale used across the paper-style setups:
// Uniform gets half-width 1/2 (unit-length support), everything else scale 1.
double default_scale(Family f);

double cdf(const DistributionSpec& spec, double x);

// Generalized inverse of the CDF; p must lie in (0, 1).
double quantile(const DistributionSpec& spec, double p);

double sample_one(const DistributionSpec& spec, RngStream& rng);
std::vector<double> sample(const DistributionSpec& spec, RngStream& rng, std::size_t count);

// U(t) = F^{-1}(1 - 1/t), t > 1. Strictly increasing; measures tail spread.
double tail_function(const DistributionSpec& spec, double t);

enum class TailType { Frechet, Weibull, Gumbel };

const char* tail_type_name(TailType t);

// Right endpoint of the support, sup{x : F(x) < 1}. Explicit infinite
// variant rather than a sentinel value.
struct RightEndpoint {
    bool finite = false;
    double value = 0.0;

    static RightEndpoint infinite() { return {false, 0.0}; }
    static RightEndpoint at(double v) { return {true, v}; }
};

// Normalizing sequences for the maximum of n i.i.d. draws from the centered
// family, plus the limit-law identity. a_n/b_n are the exact values computed
// from the tail function; a_n_asymptotic/b_n_asymptotic are the textbook
// closed forms (e.g. b_n = log n for Laplace). The two sets agree only in the
// limit and are never interchanged silently.
struct EvtNormalization {
    TailType tail_type = TailType::Gumbel;
    double alpha = 1.0;  // shape of the limit law; 1 for Gumbel
    double a_n = 1.0;
    double b_n = 0.0;
    RightEndpoint x_f = RightEndpoint::infinite();
    double a_n_asymptotic = 1.0;
    double b_n_asymptotic = 0.0;
    std::uint64_t n = 2;
};

// n >= 2. Constants are derived from the centered (mu = 0) family.
EvtNormalization evt_constants(const DistributionSpec& spec, std::uint64_t n);

// CDF of the limit law G matching the normalization.
double limit_cdf(const EvtNormalization& norm, double x);

// One inverse-transform draw from G.
double sample_limit(const EvtNormalization& norm, RngStream& rng);

// Gumbel auxiliary function g(t) = int_t^{x_F} (1-F(u)) du / (1-F(t)),
// for the centered family. Closed form where one exists (Laplace: g = scale),
// adaptive quadrature otherwise.
double gumbel_aux_g(const DistributionSpec& spec, double t);

// Always-quadrature variant, exposed as a cross-check for the closed forms.
// Absolute quadrature error <= 1e-10.
double gumbel_aux_g_numeric(const DistributionSpec& spec, double t);

}  // namespace imb
