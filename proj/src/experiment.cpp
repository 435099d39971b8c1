#include "rcfluct/experiment.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rcfluct/rc_matrix.hpp"
#include "rcfluct/rng.hpp"

namespace rcfluct {

CenteringMode centering_from_name(const std::string& name) {
  if (name == "auto") return CenteringMode::Auto;
  if (name == "exact") return CenteringMode::Exact;
  if (name == "empirical") return CenteringMode::Empirical;
  throw std::invalid_argument("unknown centering mode: " + name);
}

std::string to_string(CenteringMode mode) {
  switch (mode) {
    case CenteringMode::Auto: return "auto";
    case CenteringMode::Exact: return "exact";
    case CenteringMode::Empirical: return "empirical";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("experiment: n must be >= 2");
  if (replicates < 2) throw std::invalid_argument("experiment: need at least 2 replicates");
  const bool has_ps = !ps.empty();
  if (has_ps == poly.has_value())
    throw std::invalid_argument("experiment: set exactly one of exponents / polynomial");
  for (int p : ps) {
    if (p == 0)
      throw std::invalid_argument(
          "experiment: p = 0 rejected; that statistic is identically zero and has "
          "no fluctuation");
    if (p < 1) throw std::invalid_argument("experiment: exponents must be >= 1");
  }
}

namespace {

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

std::vector<int> needed_exponents(const ExperimentConfig& config) {
  std::set<int> s;
  if (config.poly) {
    for (int k = 1; k <= config.poly->degree(); ++k)
      if (config.poly->coeff(k) != 0) s.insert(k);
  } else {
    s.insert(config.ps.begin(), config.ps.end());
  }
  return {s.begin(), s.end()};
}

/// Trace of M^{2p} for every requested p, sharing the expensive part of the
/// chosen path across powers. p = 1 always uses the identity
/// Tr(M^2) == sum x_i^2, which is exact for integer-valued entries.
std::map<int, double> replicate_traces(const RCMatrix& m, const std::vector<int>& powers,
                                       TracePath path) {
  std::map<int, double> out;
  std::vector<int> rest;
  for (int p : powers) {
    if (p == 1) {
      double s = 0.0;
      for (double v : m.raw) s += v * v;
      out[1] = s;
    } else {
      rest.push_back(p);
    }
  }
  if (rest.empty()) return out;

  switch (path) {
    case TracePath::Fast: {
      const std::vector<double> sq = fast_squared_spectrum(m);
      for (int p : rest) {
        double t = 0.0;
        for (double s : sq) t += ipow(s, p);
        out[p] = t;
      }
      break;
    }
    case TracePath::Spectral: {
      const Eigen::MatrixXd a = m.dense();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
      const auto& ev = solver.eigenvalues();
      for (int p : rest) {
        double t = 0.0;
        for (int i = 0; i < ev.size(); ++i) t += ipow(ev[i] * ev[i], p);
        out[p] = t;
      }
      break;
    }
    case TracePath::Dense: {
      const Eigen::MatrixXd a = m.dense();
      Eigen::MatrixXd acc = a;
      int e = 1;
      const int top = 2 * rest.back();
      std::set<int> wanted(rest.begin(), rest.end());
      while (e < top) {
        acc = acc * a;
        ++e;
        if (e % 2 == 0 && wanted.count(e / 2)) out[e / 2] = acc.trace();
      }
      break;
    }
  }
  return out;
}

}  // namespace

FluctuationSamples sample_fluctuations(const ExperimentConfig& config) {
  config.validate();
  const EntryDistribution dist = make_distribution(config.dist);
  const std::vector<int> powers = needed_exponents(config);
  const int R = config.replicates;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(config.n));

  std::map<int, std::vector<double>> traces;
  for (int p : powers) traces[p].assign(static_cast<std::size_t>(R), 0.0);

  for (int r = 0; r < R; ++r) {
    RandomStream stream(config.seed, static_cast<std::uint64_t>(r));
    const std::vector<double> x = sample_entries(dist, config.n, stream);
    const RCMatrix m = build_rc(x, config.n);
    for (const auto& [p, value] : replicate_traces(m, powers, config.path))
      traces[p][static_cast<std::size_t>(r)] = value;
  }

  FluctuationSamples out;
  for (int p : powers) {
    bool exact = false;
    switch (config.centering) {
      case CenteringMode::Exact: exact = true; break;
      case CenteringMode::Empirical: exact = false; break;
      case CenteringMode::Auto:
        exact = std::pow(static_cast<double>(config.n), 2.0 * p) <=
                static_cast<double>(config.budget);
        break;
    }
    double center;
    if (exact) {
      center = to_double(expected_trace_power(config.n, p, dist.moments, config.budget));
    } else {
      double s = 0.0;
      for (double t : traces[p]) s += t;
      center = s / static_cast<double>(R);
    }
    out.centering_used[p] = exact ? "exact" : "empirical";
    out.centers[p] = center;
  }

  if (config.poly) {
    std::vector<double> col(static_cast<std::size_t>(R), 0.0);
    for (int r = 0; r < R; ++r) {
      double acc = 0.0;
      for (int p : powers)
        acc += to_double(config.poly->coeff(p)) *
               (traces[p][static_cast<std::size_t>(r)] - out.centers[p]);
      col[static_cast<std::size_t>(r)] = acc * inv_sqrt_n;
    }
    out.labels.push_back("w_Q");
    out.columns.push_back(std::move(col));
  } else {
    for (int p : config.ps) {
      std::vector<double> col(static_cast<std::size_t>(R), 0.0);
      for (int r = 0; r < R; ++r)
        col[static_cast<std::size_t>(r)] =
            (traces[p][static_cast<std::size_t>(r)] - out.centers[p]) * inv_sqrt_n;
      out.labels.push_back("w_" + std::to_string(p));
      out.columns.push_back(std::move(col));
    }
  }
  return out;
}

CovarianceReport run_experiment(const ExperimentConfig& config,
                                FluctuationSamples* keep_samples) {
  const auto t0 = std::chrono::steady_clock::now();
  const FluctuationSamples samples = sample_fluctuations(config);
  if (keep_samples) *keep_samples = samples;
  const EntryDistribution dist = make_distribution(config.dist);
  const BigRat mu4 = dist.moments.mu4();
  const std::size_t d = samples.columns.size();

  CovarianceReport report;
  report.labels = samples.labels;
  report.centering_used = samples.centering_used;
  report.centers = samples.centers;

  report.theoretical.assign(d, std::vector<double>(d, 0.0));
  report.theoretical_exact.assign(d, std::vector<std::string>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      BigRat v = config.poly
                     ? polynomial_limiting_variance(*config.poly, mu4)
                     : limiting_covariance(config.ps[i], config.ps[j], mu4);
      report.theoretical[i][j] = to_double(v);
      report.theoretical_exact[i][j] = rational_string(v);
    }

  report.empirical.assign(d, std::vector<Estimate>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Estimate e = covariance_with_se(samples.columns[i], samples.columns[j]);
      report.empirical[i][j] = e;
      report.empirical[j][i] = e;
    }

  report.diagnostics.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double sigma2 = report.theoretical[i][i];
    if (sigma2 == 0.0) report.degenerate = true;
    if (samples.columns[i].size() >= 500)
      report.diagnostics[i] = verify_normality(samples.columns[i], sigma2);
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

MixedMomentCheck verify_mixed_moments(const ExperimentConfig& config) {
  config.validate();
  if (config.poly)
    throw std::invalid_argument("verify_mixed_moments: needs a list of exponents");

  ExperimentConfig base = config;
  {
    std::set<int> unique_ps(config.ps.begin(), config.ps.end());
    base.ps.assign(unique_ps.begin(), unique_ps.end());
  }
  const FluctuationSamples samples = sample_fluctuations(base);
  std::map<int, std::size_t> column_of;
  for (std::size_t i = 0; i < base.ps.size(); ++i)
    column_of[base.ps[i]] = i;

  const std::size_t R = static_cast<std::size_t>(config.replicates);
  std::vector<double> products(R, 1.0);
  for (int p : config.ps) {
    const auto& col = samples.columns[column_of[p]];
    for (std::size_t r = 0; r < R; ++r) products[r] *= col[r];
  }

  MixedMomentCheck out;
  out.ps = config.ps;
  out.empirical = mean_with_se(products);
  bool all_zero = true;
  for (double v : products)
    if (v != 0.0) { all_zero = false; break; }
  out.degenerate = all_zero;

  const BigRat mu4 = make_distribution(config.dist).moments.mu4();
  out.theoretical = to_double(gaussian_mixed_moment(
      config.ps, [&](int a, int b) { return limiting_covariance(a, b, mu4); }));
  return out;
}

}  // namespace rcfluct
