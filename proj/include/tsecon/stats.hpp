#pragma once

#include <span>

namespace tsecon::stats {

double normal_cdf(double x);
double normal_quantile(double p);
/// Upper tail P(X > x) for chi-square(df).
double chi2_sf(double x, double df);
/// Two-sided p-value of a t statistic.
double t_two_sided(double t, double df);
double t_quantile(double p, double df);
/// Upper tail of F(df1, df2).
double f_sf(double x, double df1, double df2);
/// Two-sided p-value of an asymptotically normal statistic.
double z_two_sided(double z);

double mean(std::span<const double> x);
/// Population (1/N) variance.
double variance_pop(std::span<const double> x);
/// Sample (1/(N-1)) variance.
double variance(std::span<const double> x);

} // namespace tsecon::stats
