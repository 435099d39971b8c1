#include "rcfluct/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcfluct {

const BigRat& MomentProfile::moment(int k) const {
  if (k < 1 || k > order())
    throw std::invalid_argument("MomentProfile: moment order out of range");
  return mu[static_cast<std::size_t>(k) - 1];
}

namespace {

MomentProfile gaussian_profile() {
  // mu_{2k} = (2k-1)!!, odd moments 0.
  MomentProfile p;
  p.mu.resize(kMomentOrder, BigRat(0));
  BigInt dfact = 1;
  for (int k = 1; 2 * k <= kMomentOrder; ++k) {
    dfact *= 2 * k - 1;
    p.mu[2 * k - 1] = BigRat(dfact);
  }
  return p;
}

MomentProfile rademacher_profile() {
  MomentProfile p;
  p.mu.resize(kMomentOrder, BigRat(0));
  for (int k = 2; k <= kMomentOrder; k += 2) p.mu[k - 1] = BigRat(1);
  return p;
}

MomentProfile uniform_profile() {
  // Uniform on [-sqrt(3), sqrt(3)]: mu_{2k} = 3^k / (2k+1), odd moments 0.
  MomentProfile p;
  p.mu.resize(kMomentOrder, BigRat(0));
  for (int k = 1; 2 * k <= kMomentOrder; ++k)
    p.mu[2 * k - 1] = BigRat(pow_int(3, k), 2 * k + 1);
  return p;
}

MomentProfile shifted_exponential_profile() {
  // Exp(1) - 1: mu_k = k! * sum_{j=0}^{k} (-1)^j / j!  (0, 1, 2, 9, 44, ...).
  MomentProfile p;
  p.mu.resize(kMomentOrder, BigRat(0));
  BigInt d = 1;  // value for order 0
  for (int k = 1; k <= kMomentOrder; ++k) {
    d = d * k + (k % 2 == 0 ? 1 : -1);
    p.mu[k - 1] = BigRat(d);
  }
  return p;
}

}  // namespace

EntryDistribution make_distribution(DistKind kind) {
  switch (kind) {
    case DistKind::Gaussian: return {kind, gaussian_profile()};
    case DistKind::Rademacher: return {kind, rademacher_profile()};
    case DistKind::Uniform: return {kind, uniform_profile()};
    case DistKind::ShiftedExponential: return {kind, shifted_exponential_profile()};
  }
  throw std::invalid_argument("make_distribution: unknown kind");
}

EntryDistribution distribution_from_name(const std::string& name) {
  if (name == "gaussian") return make_distribution(DistKind::Gaussian);
  if (name == "rademacher") return make_distribution(DistKind::Rademacher);
  if (name == "uniform") return make_distribution(DistKind::Uniform);
  if (name == "shifted_exponential")
    return make_distribution(DistKind::ShiftedExponential);
  throw std::invalid_argument("unknown distribution: " + name);
}

std::string to_string(DistKind kind) {
  switch (kind) {
    case DistKind::Gaussian: return "gaussian";
    case DistKind::Rademacher: return "rademacher";
    case DistKind::Uniform: return "uniform";
    case DistKind::ShiftedExponential: return "shifted_exponential";
  }
  return "?";
}

double sample_one(DistKind kind, RandomStream& stream) {
  switch (kind) {
    case DistKind::Gaussian:
      return stream.normal();
    case DistKind::Rademacher:
      return stream.sign();
    case DistKind::Uniform:
      return (2.0 * stream.uniform() - 1.0) * std::sqrt(3.0);
    case DistKind::ShiftedExponential:
      // -log(1-u) is Exp(1); u < 1 so the log is finite.
      return -std::log(1.0 - stream.uniform()) - 1.0;
  }
  throw std::invalid_argument("sample_one: unknown kind");
}

std::vector<double> sample_entries(const EntryDistribution& dist, int n,
                                   RandomStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_entries: n must be >= 1");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = sample_one(dist.kind, stream);
  return x;
}

double moment_profile_max_z(const EntryDistribution& dist, std::uint64_t seed,
                            std::size_t draws, int max_order) {
  if (max_order < 1 || max_order > dist.moments.order())
    throw std::invalid_argument("moment_profile_max_z: order out of range");
  RandomStream stream(seed, 0);
  std::vector<double> sum(static_cast<std::size_t>(2 * max_order) + 1, 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = sample_one(dist.kind, stream);
    double pw = 1.0;
    for (int k = 1; k <= 2 * max_order; ++k) {
      pw *= x;
      sum[static_cast<std::size_t>(k)] += pw;
    }
  }
  double worst = 0.0;
  const double inv = 1.0 / static_cast<double>(draws);
  for (int k = 1; k <= max_order; ++k) {
    const double mk = sum[static_cast<std::size_t>(k)] * inv;
    const double m2k = sum[static_cast<std::size_t>(2 * k)] * inv;
    const double var = std::max(m2k - mk * mk, 0.0);
    const double se = std::sqrt(var * inv);
    const double diff = mk - to_double(dist.moments.moment(k));
    double z;
    if (se == 0.0)
      z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
      z = std::abs(diff) / se;
    worst = std::max(worst, z);
  }
  return worst;
}

}  // namespace rcfluct
