#pragma once

namespace catapt {

// Special-function kernel backing every p-value in the pipeline. All
// functions are pure and thread-safe (no libm state, no globals).

double log_gamma(double x); // x > 0

// Regularized incomplete gamma P(a,x); series for x < a+1, continued
// fraction otherwise. Absolute error <= 1e-12.
double lower_gamma_regularized(double a, double x);
double upper_gamma_regularized(double a, double x);

// Regularized incomplete beta I_x(a,b).
double beta_regularized(double a, double b, double x);

double normal_cdf(double z);

double chi2_sf(double x, double df);
double chi2_cdf(double x, double df);
double chi2_quantile(double p, double df);

double f_sf(double x, double df1, double df2);

// One-sided and two-sided Student t survival functions.
double student_t_sf(double t, double df);
double student_t_sf_two_sided(double t, double df);

// Survival function of the studentized range of k groups with df error
// degrees of freedom, by double Gauss-Legendre quadrature over the scale
// mixture. Absolute error <= 1e-6.
double studentized_range_sf(double q, int k, double df);
double studentized_range_cdf(double q, int k, double df);

} // namespace catapt
