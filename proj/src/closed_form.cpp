#include "rcfluct/closed_form.hpp"

#include <cstdlib>
#include <stdexcept>

namespace rcfluct {

BigInt closed_form_level_count(long n, int p, int s) {
  if (n < 1) throw std::invalid_argument("closed_form_level_count: n must be >= 1");
  if (p < 1) throw std::invalid_argument("closed_form_level_count: p must be >= 1");
  if (std::abs(s) > p - 1)
    throw std::invalid_argument("closed_form_level_count: |s| must be <= p-1");

  BigInt total = 0;
  for (int k = 0; k <= p + s - 1; ++k) {
    BigInt term = binomial(2 * p, k) *
                  binomial(BigInt(p + s - k) * n + (p - 1), 2 * p - 1);
    total += (k % 2 == 0) ? term : -term;
  }
  return total;
}

BigRat level_count_limit(int k, int s) {
  if (k < 1) throw std::invalid_argument("level_count_limit: k must be >= 1");
  if (std::abs(s) > k - 1)
    throw std::invalid_argument("level_count_limit: |s| must be <= k-1");

  BigInt sum = 0;
  for (int j = 0; j <= k + s - 1; ++j) {
    BigInt term = binomial(2 * k, j) * pow_int(k + s - j, 2 * k - 1);
    sum += (j % 2 == 0) ? term : -term;
  }
  return BigRat(sum, factorial(2 * k - 1));
}

}  // namespace rcfluct
