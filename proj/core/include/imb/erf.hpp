#pragma once

namespace imb {

// Rational Chebyshev approximations for the error function after
// W. J. Cody, Math. Comp. 23 (1969), 631-638 (netlib SPECFUN).
// Relative error is below 1e-15 across the double range, which keeps the
// Gaussian CDF below the 1e-14 relative-error target.
double erf_cody(double x);
double erfc_cody(double x);
double erfcx_cody(double x);  // exp(x^2) * erfc(x)

double norm_pdf(double x);
double norm_cdf(double x);
double norm_sf(double x);  // upper tail P(X >= x), X ~ N(0,1)

// Inverse standard-normal CDF, p in (0, 1). Rational initial guess
// refined by safeguarded Newton on norm_cdf until |cdf(x) - p| <= 1e-13.
double norm_quantile(double p);

}  // namespace imb
