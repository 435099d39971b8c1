#pragma once

// Limiting covariance structure of the centered trace-power statistics.
// All values are exact rationals; callers convert to double at the edge.

#include <functional>
#include <vector>

#include "rcfluct/exact.hpp"

namespace rcfluct {

/// Number of ways to pair off the non-crossing index positions of two tuples
/// of lengths 2p and 2q when exactly k values cross between them.
/// Requires p, q >= 1 and 1 <= k <= min(p, q).
BigInt pair_matching_count(int p, int q, int k);

/// Weight contributed by a k-value cross matching in the large-size limit.
/// cross_matching_factor(1) == 1; cross_matching_factor(2) == 16/3.
BigRat cross_matching_factor(int k);

/// Large-size limit of Cov(w_p, w_q), where w_p is the centered and scaled
/// trace of the 2p-th matrix power.  mu4 is the fourth moment of the entry
/// law and must be >= 1 (entries have unit variance).
BigRat limiting_covariance(int p, int q, const BigRat& mu4);

/// Even polynomial Q(x) = sum_{k=1}^{d} a_k x^{2k}, stored as a_1..a_d.
/// The leading coefficient a_d must be nonzero; constant terms are dropped
/// by centering and are not representable here.
struct EvenPolynomial {
  std::vector<BigRat> coeffs;

  explicit EvenPolynomial(std::vector<BigRat> a);

  int degree() const { return static_cast<int>(coeffs.size()); }
  const BigRat& coeff(int k) const { return coeffs.at(static_cast<std::size_t>(k) - 1); }

  /// Q(x) at a real point, for evaluating the statistic on eigenvalues.
  double operator()(double x) const;
};

/// Large-size limit of Var(w_Q): the coefficient-weighted double sum of
/// limiting_covariance over pairs of powers appearing in Q.
BigRat polynomial_limiting_variance(const EvenPolynomial& Q, const BigRat& mu4);

/// E[Z_{l_1} Z_{l_2} ... Z_{l_m}] for a centered jointly gaussian family with
/// Cov(Z_a, Z_b) = sigma(a, b), summed over all perfect matchings of the
/// positions.  Odd m gives 0, empty input gives 1.
BigRat gaussian_mixed_moment(const std::vector<int>& labels,
                             const std::function<BigRat(int, int)>& sigma);

}  // namespace rcfluct
