#pragma once

// Sample statistics, jackknife standard errors, and a one-sample
// Kolmogorov-Smirnov test against a centered normal law.

#include <cstddef>
#include <vector>

namespace rcfluct {

double sample_mean(const std::vector<double>& xs);

/// Unbiased (divides by R-1).
double sample_covariance(const std::vector<double>& a, const std::vector<double>& b);
double sample_variance(const std::vector<double>& xs);

/// k-th central sample moment (divides by R).
double central_moment(const std::vector<double>& xs, int k);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Mean with its standard error sd/sqrt(R).
Estimate mean_with_se(const std::vector<double>& xs);

/// Unbiased covariance with a leave-one-out jackknife standard error.
/// Requires at least 3 replicates for a finite SE.
Estimate covariance_with_se(const std::vector<double>& a, const std::vector<double>& b);

/// CDF of N(0, sigma2) at x.
double normal_cdf(double x, double sigma2);

/// Tail probability Q(lambda) of the Kolmogorov distribution
/// (asymptotic law of sqrt(R) times the KS statistic).
double kolmogorov_tail(double lambda);

struct KSResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// One-sample KS test of the samples against N(0, sigma2); sigma2 > 0.
KSResult ks_test_normal(std::vector<double> samples, double sigma2);

struct NormalityDiagnostics {
  double skewness = 0.0;         // third standardized sample moment
  double excess_kurtosis = 0.0;  // fourth standardized sample moment minus 3
  double ks_statistic = 0.0;
  double ks_p_value = 1.0;
  bool degenerate = false;       // sigma2 == 0 path taken
  bool degenerate_pass = false;  // with sigma2 == 0: all samples exactly zero
};

/// Diagnostics of the samples against N(0, sigma2). Requires at least 500
/// samples and sigma2 >= 0; sigma2 == 0 short-circuits to the all-zero check.
NormalityDiagnostics verify_normality(const std::vector<double>& samples,
                                      double sigma2);

}  // namespace rcfluct
