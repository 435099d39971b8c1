#pragma once

// Exact finite-n expectations of trace statistics by brute-force enumeration
// of balanced index tuples, using independence of the entries. Used for
// centering and for validating the limiting covariance at tiny n.

#include <cstdint>

#include "rcfluct/exact.hpp"
#include "rcfluct/index_vector.hpp"
#include "rcfluct/moments.hpp"

namespace rcfluct {

inline constexpr std::uint64_t kOracleBudget = 10'000'000;

/// E[prod_k x_{v_k}] for independent entries: the product over distinct values
/// of the moment at that value's total multiplicity. Zero whenever some value
/// appears exactly once (the mean is zero). Throws invalid_argument if a
/// multiplicity exceeds the profile's order.
BigRat product_moment(const IndexVector& v, const MomentProfile& moments);

/// Same, for the concatenation of two tuples.
BigRat product_moment(const IndexVector& a, const IndexVector& b,
                      const MomentProfile& moments);

/// E[Tr(M^{2p})] on the scaled matrix: n^{1-p} times the sum of product
/// moments over the balanced tuples of length 2p. Cost n^{2p}, guarded by the
/// budget.
BigRat expected_trace_power(int n, int p, const MomentProfile& moments,
                            std::uint64_t budget = kOracleBudget);

/// Exact Cov(w_p, w_q) at finite n: n^{-(p+q-1)} times the double sum of
/// E[joint] - E[first] E[second] over pairs of balanced tuples. Cost is
/// bounded by n^{2(p+q)}, guarded by the budget.
BigRat exact_fluctuation_covariance(int n, int p, int q,
                                    const MomentProfile& moments,
                                    std::uint64_t budget = kOracleBudget);

}  // namespace rcfluct
