#pragma once

namespace mgarch {

/// Standard normal CDF.
double normal_cdf(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Chi-square survival function P(X > x) with k degrees of freedom.
double chi_squared_sf(double x, double k);

/// Chi-square CDF with k degrees of freedom.
double chi_squared_cdf(double x, double k);

/// Asymptotic Kolmogorov distribution survival function
/// Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

/// Dallal-Wilkinson (1986) p-value approximation for the Lilliefors
/// statistic (normality test with estimated mean and variance).
double lilliefors_pvalue(double d, long n);

}  // namespace mgarch
