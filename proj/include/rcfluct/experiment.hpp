#pragma once

// Seeded replicate sampling of the centered trace fluctuations and the
// simulation-versus-theory comparison report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcfluct/covariance.hpp"
#include "rcfluct/moments.hpp"
#include "rcfluct/oracle.hpp"
#include "rcfluct/stats.hpp"
#include "rcfluct/trace.hpp"

namespace rcfluct {

enum class CenteringMode { Auto, Exact, Empirical };

CenteringMode centering_from_name(const std::string& name);
std::string to_string(CenteringMode mode);

struct ExperimentConfig {
  int n = 2;
  std::vector<int> ps;                 // exponents of the tracked statistics
  std::optional<EvenPolynomial> poly;  // polynomial statistic instead of ps
  DistKind dist = DistKind::Gaussian;
  int replicates = 2;
  std::uint64_t seed = 1;
  TracePath path = TracePath::Fast;
  CenteringMode centering = CenteringMode::Auto;
  std::uint64_t budget = kOracleBudget;

  /// Throws invalid_argument unless n >= 2, R >= 2, every p >= 1, and exactly
  /// one of ps / poly is set. p = 0 is called out: that statistic is
  /// identically zero and has no fluctuation to sample.
  void validate() const;
};

struct FluctuationSamples {
  std::vector<std::string> labels;            // one per column
  std::vector<std::vector<double>> columns;   // replicate-major values
  std::map<int, std::string> centering_used;  // per exponent: exact | empirical
  std::map<int, double> centers;              // per exponent: centering value
};

/// Draws R replicates: per replicate, sample entries with substream r, build
/// the matrix, compute the needed trace powers, center, and scale by
/// 1/sqrt(n). Deterministic given the seed; replicate order is fixed.
FluctuationSamples sample_fluctuations(const ExperimentConfig& config);

struct CovarianceReport {
  std::vector<std::string> labels;
  std::vector<std::vector<Estimate>> empirical;            // symmetric, with jackknife SE
  std::vector<std::vector<double>> theoretical;            // limiting covariances
  std::vector<std::vector<std::string>> theoretical_exact; // same, as rationals
  // Per column, present when the replicate count supports the test (>= 500).
  std::vector<std::optional<NormalityDiagnostics>> diagnostics;
  std::map<int, std::string> centering_used;
  std::map<int, double> centers;
  bool degenerate = false;  // some statistic has limiting variance zero
  double runtime_seconds = 0.0;
};

/// When keep_samples is non-null the replicate matrix is copied out for
/// separate serialization.
CovarianceReport run_experiment(const ExperimentConfig& config,
                                FluctuationSamples* keep_samples = nullptr);

struct MixedMomentCheck {
  std::vector<int> ps;    // exponents of the factors, repeats allowed
  Estimate empirical;     // mean of the replicate products, with SE
  double theoretical;     // matching gaussian family moment
  bool degenerate = false;  // every replicate product is exactly zero
};

/// Compares the empirical mixed moment E[w_{p_1} ... w_{p_l}] to the value
/// implied by a centered gaussian family with the limiting covariance.
MixedMomentCheck verify_mixed_moments(const ExperimentConfig& config);

}  // namespace rcfluct
