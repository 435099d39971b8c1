#include "rcfluct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rcfluct {

double sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("sample_mean: empty input");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_covariance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("sample_covariance: need matched inputs of size >= 2");
  const double ma = sample_mean(a), mb = sample_mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size() - 1);
}

double sample_variance(const std::vector<double>& xs) {
  return sample_covariance(xs, xs);
}

double central_moment(const std::vector<double>& xs, int k) {
  if (xs.empty()) throw std::invalid_argument("central_moment: empty input");
  if (k < 1) throw std::invalid_argument("central_moment: order must be >= 1");
  const double m = sample_mean(xs);
  double s = 0.0;
  for (double x : xs) {
    double d = x - m, p = 1.0;
    for (int i = 0; i < k; ++i) p *= d;
    s += p;
  }
  return s / static_cast<double>(xs.size());
}

Estimate mean_with_se(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("mean_with_se: need >= 2 samples");
  const double m = sample_mean(xs);
  const double v = sample_variance(xs);
  return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

Estimate covariance_with_se(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t r = a.size();
  if (a.size() != b.size() || r < 2)
    throw std::invalid_argument("covariance_with_se: need matched inputs of size >= 2");
  const double ma = sample_mean(a), mb = sample_mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < r; ++i) s += (a[i] - ma) * (b[i] - mb);
  const double value = s / static_cast<double>(r - 1);
  // Two replicates leave nothing to jackknife over.
  if (r == 2) return {value, std::numeric_limits<double>::infinity()};

  // Leave-one-out cross-product sum: S_(i) = S - alpha_i beta_i R/(R-1).
  const double rd = static_cast<double>(r);
  std::vector<double> theta(r);
  double theta_bar = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double alpha = a[i] - ma, beta = b[i] - mb;
    const double s_i = s - alpha * beta * rd / (rd - 1.0);
    theta[i] = s_i / (rd - 2.0);
    theta_bar += theta[i];
  }
  theta_bar /= rd;
  double ss = 0.0;
  for (double t : theta) ss += (t - theta_bar) * (t - theta_bar);
  const double se = std::sqrt((rd - 1.0) / rd * ss);
  return {value, se};
}

double normal_cdf(double x, double sigma2) {
  if (sigma2 <= 0.0) throw std::invalid_argument("normal_cdf: sigma2 must be > 0");
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * sigma2));
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form, accurate where the alternating series is slow.
    const double pi = std::numbers::pi;
    const double t = std::exp(-pi * pi / (8.0 * lambda * lambda));
    const double cdf = std::sqrt(2.0 * pi) / lambda *
                       (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
    return 1.0 - cdf;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KSResult ks_test_normal(std::vector<double> samples, double sigma2) {
  if (samples.size() < 2) throw std::invalid_argument("ks_test_normal: need >= 2 samples");
  if (sigma2 <= 0.0) throw std::invalid_argument("ks_test_normal: sigma2 must be > 0");
  std::sort(samples.begin(), samples.end());
  const double r = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i], sigma2);
    const double lo = static_cast<double>(i) / r;
    const double hi = static_cast<double>(i + 1) / r;
    d = std::max({d, f - lo, hi - f});
  }
  return {d, kolmogorov_tail(std::sqrt(r) * d)};
}

NormalityDiagnostics verify_normality(const std::vector<double>& samples,
                                      double sigma2) {
  if (samples.size() < 500)
    throw std::invalid_argument("verify_normality: need >= 500 samples");
  if (sigma2 < 0.0) throw std::invalid_argument("verify_normality: sigma2 must be >= 0");

  NormalityDiagnostics out;
  if (sigma2 == 0.0) {
    out.degenerate = true;
    out.degenerate_pass =
        std::all_of(samples.begin(), samples.end(), [](double x) { return x == 0.0; });
    out.ks_statistic = out.degenerate_pass ? 0.0 : 1.0;
    out.ks_p_value = out.degenerate_pass ? 1.0 : 0.0;
    return out;
  }

  const double m2 = central_moment(samples, 2);
  const double m3 = central_moment(samples, 3);
  const double m4 = central_moment(samples, 4);
  if (m2 > 0.0) {
    out.skewness = m3 / std::pow(m2, 1.5);
    out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  const KSResult ks = ks_test_normal(samples, sigma2);
  out.ks_statistic = ks.statistic;
  out.ks_p_value = ks.p_value;
  return out;
}

}  // namespace rcfluct
