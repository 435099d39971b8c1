#pragma once

#include "rcfluct/exact.hpp"

namespace rcfluct {

/// Number of tuples (i_1,...,i_2p) in {1..n}^{2p} whose alternating sum
/// equals s*n, evaluated in closed form:
///
///   sum_{k=0}^{p+s-1} (-1)^k C(2p, k) C((p+s-k)n + p - 1, 2p-1)
///
/// Valid for s in {-(p-1),...,p-1}; other s are rejected (the formula's
/// stated range). Agrees exactly with brute-force enumeration.
BigInt closed_form_level_count(long n, int p, int s);

/// lim_{n->inf} of closed_form_level_count(n, k, s) / n^{2k-1}, as an exact
/// rational:
///
///   (1/(2k-1)!) sum_{j=0}^{k+s-1} (-1)^j C(2k, j) (k+s-j)^{2k-1}
BigRat level_count_limit(int k, int s);

}  // namespace rcfluct
