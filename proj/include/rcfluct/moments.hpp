#pragma once

// Built-in entry laws. Every law has mean zero and unit variance; moments are
// carried as exact rationals up to order kMomentOrder so oracle computations
// stay exact.

#include <cstdint>
#include <string>
#include <vector>

#include "rcfluct/exact.hpp"
#include "rcfluct/rng.hpp"

namespace rcfluct {

inline constexpr int kMomentOrder = 12;

enum class DistKind { Gaussian, Rademacher, Uniform, ShiftedExponential };

struct MomentProfile {
  std::vector<BigRat> mu;  // mu[k-1] holds the order-k moment

  int order() const { return static_cast<int>(mu.size()); }
  const BigRat& moment(int k) const;
  const BigRat& mu4() const { return moment(4); }
};

struct EntryDistribution {
  DistKind kind;
  MomentProfile moments;
};

EntryDistribution make_distribution(DistKind kind);

/// Accepts "gaussian", "rademacher", "uniform", "shifted_exponential".
EntryDistribution distribution_from_name(const std::string& name);
std::string to_string(DistKind kind);

double sample_one(DistKind kind, RandomStream& stream);
std::vector<double> sample_entries(const EntryDistribution& dist, int n,
                                   RandomStream& stream);

/// Largest |z| between sample and declared moments over orders 1..max_order.
/// Sampling is seeded; the standard gate is |z| < 5 at 10^6 draws.
double moment_profile_max_z(const EntryDistribution& dist, std::uint64_t seed,
                            std::size_t draws, int max_order);

}  // namespace rcfluct
