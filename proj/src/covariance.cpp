#include "rcfluct/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcfluct {

BigInt pair_matching_count(int p, int q, int k) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("pair_matching_count: p and q must be >= 1");
  if (k < 1 || k > std::min(p, q))
    throw std::invalid_argument("pair_matching_count: k out of range");
  BigInt bp = binomial(p, p - k);
  BigInt bq = binomial(q, q - k);
  return bp * bp * factorial(p - k) * bq * bq * factorial(q - k);
}

BigRat cross_matching_factor(int k) {
  if (k < 1) throw std::invalid_argument("cross_matching_factor: k must be >= 1");
  BigInt inner = 0;
  for (int s = -(k - 1); s <= k - 1; ++s) {
    BigInt level = 0;
    for (int j = 0; j <= k + s - 1; ++j) {
      BigInt term = binomial(2 * k, j) * pow_int(k + s - j, 2 * k - 1);
      if (j % 2 == 0) level += term; else level -= term;
    }
    inner += level * (s == 0 ? 1 : 2);
  }
  BigInt kf = factorial(k);
  return BigRat(inner * kf * kf, factorial(2 * k - 1));
}

BigRat limiting_covariance(int p, int q, const BigRat& mu4) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("limiting_covariance: p and q must be >= 1");
  if (mu4 < 1)
    throw std::invalid_argument("limiting_covariance: fourth moment must be >= 1");
  BigRat total = (mu4 - 1) * BigRat(pair_matching_count(p, q, 1));
  for (int k = 2; k <= std::min(p, q); ++k)
    total += BigRat(pair_matching_count(p, q, k)) * cross_matching_factor(k);
  return total;
}

EvenPolynomial::EvenPolynomial(std::vector<BigRat> a) : coeffs(std::move(a)) {
  if (coeffs.empty())
    throw std::invalid_argument("EvenPolynomial: need at least one coefficient");
  if (coeffs.back() == 0)
    throw std::invalid_argument("EvenPolynomial: leading coefficient must be nonzero");
}

double EvenPolynomial::operator()(double x) const {
  // Horner in x^2.
  const double x2 = x * x;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x2 + to_double(*it);
  return acc * x2;
}

BigRat polynomial_limiting_variance(const EvenPolynomial& Q, const BigRat& mu4) {
  BigRat total = 0;
  for (int l = 1; l <= Q.degree(); ++l)
    for (int k = 1; k <= Q.degree(); ++k)
      total += Q.coeff(l) * Q.coeff(k) * limiting_covariance(l, k, mu4);
  return total;
}

namespace {

BigRat sum_over_matchings(const std::vector<int>& open, const std::vector<int>& labels,
                          const std::function<BigRat(int, int)>& sigma) {
  if (open.empty()) return 1;
  // Pair the first open position with each later one; recursion covers every
  // perfect matching exactly once.
  const int a = open.front();
  BigRat total = 0;
  for (std::size_t j = 1; j < open.size(); ++j) {
    const int b = open[j];
    std::vector<int> rest;
    rest.reserve(open.size() - 2);
    for (std::size_t t = 1; t < open.size(); ++t)
      if (t != j) rest.push_back(open[t]);
    total += sigma(labels[a], labels[b]) * sum_over_matchings(rest, labels, sigma);
  }
  return total;
}

}  // namespace

BigRat gaussian_mixed_moment(const std::vector<int>& labels,
                             const std::function<BigRat(int, int)>& sigma) {
  if (labels.size() % 2 != 0) return 0;
  std::vector<int> open(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) open[i] = static_cast<int>(i);
  return sum_over_matchings(open, labels, sigma);
}

}  // namespace rcfluct
