#pragma once

#include <functional>
#include <vector>

namespace prineig::stats {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (Wichura's AS 241 PPND16, ~1e-15 accurate).
/// Throws InvalidLevel outside (0, 1).
double normal_quantile(double p);

/// Two-sided p-value for a standard-normal statistic.
double two_sided_normal_pvalue(double stat);

/// Type-7 quantile (linear interpolation between order statistics) of a
/// sorted sample. Throws InvalidLevel for p outside (0, 1).
double quantile_sorted(const std::vector<double>& sorted, double p);

/// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace prineig::stats
