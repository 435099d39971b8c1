#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

#include "rcfluct/closed_form.hpp"
#include "rcfluct/covariance.hpp"
#include "rcfluct/moments.hpp"

using namespace rcfluct;

namespace {

// Matching-sum oracle independent of the library recursion: walk all perfect
// matchings as permutation fixpoint-free involutions built from a position
// list, accumulating the covariance products iteratively.
BigRat brute_wick_sum(const std::vector<int>& labels,
                      const std::function<BigRat(int, int)>& sigma) {
  const std::size_t m = labels.size();
  if (m % 2 != 0) return 0;
  if (m == 0) return 1;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  BigRat total = 0;
  // each matching is reached by repeatedly pairing the lowest unused position
  std::function<void(std::vector<int>, BigRat)> rec = [&](std::vector<int> open,
                                                          BigRat acc) {
    if (open.empty()) {
      total += acc;
      return;
    }
    const int a = open.front();
    for (std::size_t j = 1; j < open.size(); ++j) {
      std::vector<int> rest;
      for (std::size_t t = 1; t < open.size(); ++t)
        if (t != j) rest.push_back(open[t]);
      rec(rest, acc * sigma(labels[a], labels[open[j]]));
    }
  };
  rec(order, 1);
  return total;
}

}  // namespace

TEST_CASE("pair matching counts, hand-checked") {
  CHECK(pair_matching_count(1, 1, 1) == 1);
  CHECK(pair_matching_count(2, 2, 1) == 16);
  CHECK(pair_matching_count(2, 1, 1) == 4);
  CHECK(pair_matching_count(1, 2, 1) == 4);
  CHECK(pair_matching_count(2, 2, 2) == 1);
  CHECK(pair_matching_count(3, 3, 1) == 324);  // (C(3,2)^2 2!)^2
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q)
      for (int k = 1; k <= std::min(p, q); ++k) {
        CHECK(pair_matching_count(p, q, k) == pair_matching_count(q, p, k));
        CHECK(pair_matching_count(p, q, k) > 0);
      }
}

TEST_CASE("pair matching counts reject bad arguments") {
  CHECK_THROWS_AS(pair_matching_count(2, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(pair_matching_count(2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(pair_matching_count(0, 1, 1), std::invalid_argument);
}

TEST_CASE("cross matching factors, hand-checked") {
  CHECK(cross_matching_factor(1) == BigRat(1));
  CHECK(cross_matching_factor(2) == BigRat(16, 3));
  CHECK(cross_matching_factor(3) == BigRat(261, 5));
  for (int k = 1; k <= 8; ++k) CHECK(cross_matching_factor(k) > 0);
  CHECK_THROWS_AS(cross_matching_factor(0), std::invalid_argument);
}

TEST_CASE("cross matching factor equals the weighted level-limit sum") {
  for (int k = 1; k <= 8; ++k) {
    BigRat sum = 0;
    for (int s = -(k - 1); s <= k - 1; ++s)
      sum += BigRat(s == 0 ? 1 : 2) * level_count_limit(k, s);
    CHECK(cross_matching_factor(k) == factorial(k) * factorial(k) * sum);
  }
}

TEST_CASE("limiting covariances, hand-checked") {
  CHECK(limiting_covariance(1, 1, BigRat(3)) == 2);
  CHECK(limiting_covariance(1, 1, BigRat(1)) == 0);
  CHECK(limiting_covariance(1, 1, BigRat(9, 5)) == BigRat(4, 5));
  CHECK(limiting_covariance(1, 2, BigRat(3)) == 8);
  CHECK(limiting_covariance(2, 2, BigRat(3)) == BigRat(112, 3));
  CHECK_THROWS_AS(limiting_covariance(1, 1, BigRat(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(limiting_covariance(0, 1, BigRat(3)), std::invalid_argument);
}

TEST_CASE("limiting covariance decomposes into matching terms") {
  // entries split as (mu4-1)c_1 + sum_{k>=2} c_k g(k); recompute in place
  for (const BigRat& mu4 : {BigRat(1), BigRat(9, 5), BigRat(3), BigRat(9)})
    for (int p = 1; p <= 5; ++p)
      for (int q = 1; q <= 5; ++q) {
        BigRat expect = (mu4 - 1) * pair_matching_count(p, q, 1);
        for (int k = 2; k <= std::min(p, q); ++k)
          expect += pair_matching_count(p, q, k) * cross_matching_factor(k);
        CHECK(limiting_covariance(p, q, mu4) == expect);
        CHECK(limiting_covariance(p, q, mu4) == limiting_covariance(q, p, mu4));
      }
}

TEST_CASE("limiting covariance matrices are positive semidefinite") {
  for (const BigRat& mu4 : {BigRat(1), BigRat(3), BigRat(9)})
    for (int d = 1; d <= 5; ++d) {
      Eigen::MatrixXd m(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          m(i, j) = to_double(limiting_covariance(i + 1, j + 1, mu4));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      CHECK(es.eigenvalues().minCoeff() >= -1e-9 * std::max(1.0, m.norm()));
    }
}

TEST_CASE("even polynomial representation") {
  EvenPolynomial sq({BigRat(1)});
  CHECK(sq.degree() == 1);
  CHECK(sq(2.0) == doctest::Approx(4.0));
  CHECK(sq(-1.5) == doctest::Approx(2.25));

  EvenPolynomial mix({BigRat(1), BigRat(1)});
  CHECK(mix.degree() == 2);
  CHECK(mix.coeff(1) == 1);
  CHECK(mix.coeff(2) == 1);
  CHECK(mix(2.0) == doctest::Approx(20.0));
  CHECK(mix(-2.0) == doctest::Approx(20.0));  // even function

  EvenPolynomial scaled({BigRat(-1, 2), BigRat(0), BigRat(3)});
  CHECK(scaled.degree() == 3);
  CHECK(scaled(1.0) == doctest::Approx(-0.5 + 3.0));

  CHECK_THROWS_AS(EvenPolynomial({}), std::invalid_argument);
  CHECK_THROWS_AS(EvenPolynomial({BigRat(0)}), std::invalid_argument);
  CHECK_THROWS_AS(EvenPolynomial({BigRat(1), BigRat(0)}), std::invalid_argument);
}

TEST_CASE("polynomial limiting variance, hand-checked") {
  CHECK(polynomial_limiting_variance(EvenPolynomial({BigRat(1)}), BigRat(3)) == 2);
  CHECK(polynomial_limiting_variance(EvenPolynomial({BigRat(1), BigRat(1)}),
                                     BigRat(3)) == BigRat(166, 3));
  // rademacher keeps only the k >= 2 matchings; x^2 alone degenerates
  CHECK(polynomial_limiting_variance(EvenPolynomial({BigRat(1)}), BigRat(1)) == 0);
}

TEST_CASE("polynomial limiting variance is the bilinear expansion") {
  EvenPolynomial q({BigRat(2), BigRat(-1, 3), BigRat(5)});
  for (const BigRat& mu4 : {BigRat(1), BigRat(3), BigRat(9, 5)}) {
    BigRat expect = 0;
    for (int l = 1; l <= q.degree(); ++l)
      for (int k = 1; k <= q.degree(); ++k)
        expect += q.coeff(l) * q.coeff(k) * limiting_covariance(l, k, mu4);
    CHECK(polynomial_limiting_variance(q, mu4) == expect);
    CHECK(expect >= 0);
  }
}

TEST_CASE("gaussian mixed moments, hand-checked") {
  auto sigma = [](int a, int b) { return limiting_covariance(a, b, BigRat(3)); };
  CHECK(gaussian_mixed_moment({1, 1}, sigma) == 2);
  CHECK(gaussian_mixed_moment({1, 2}, sigma) == 8);
  CHECK(gaussian_mixed_moment({1, 1, 1}, sigma) == 0);
  CHECK(gaussian_mixed_moment({1}, sigma) == 0);
  CHECK(gaussian_mixed_moment({1, 1, 1, 1}, sigma) == 12);
  // E[Z1^2 Z2^2] = s11 s22 + 2 s12^2
  CHECK(gaussian_mixed_moment({1, 1, 2, 2}, sigma) ==
        BigRat(2) * BigRat(112, 3) + 2 * BigRat(8) * BigRat(8));
  CHECK(gaussian_mixed_moment({}, sigma) == 1);
}

TEST_CASE("gaussian even powers give double factorials") {
  auto unit = [](int, int) { return BigRat(7, 5); };
  BigRat dfact = 1, var_power = 1;
  for (int m = 1; m <= 5; ++m) {
    dfact *= 2 * m - 1;  // (2m-1)!!
    var_power *= BigRat(7, 5);
    std::vector<int> labels(2 * m, 1);
    CHECK(gaussian_mixed_moment(labels, unit) == dfact * var_power);
  }
}

TEST_CASE("gaussian mixed moments agree with a brute matching walk") {
  auto sigma = [](int a, int b) { return BigRat(1, a + b); };
  for (const std::vector<int>& labels :
       std::vector<std::vector<int>>{{1, 2},
                                     {1, 2, 3, 4},
                                     {1, 1, 2, 3},
                                     {2, 2, 2, 2, 3, 3},
                                     {1, 2, 3, 1, 2, 3, 4, 4}}) {
    CHECK(gaussian_mixed_moment(labels, sigma) == brute_wick_sum(labels, sigma));
  }
}

TEST_CASE("fourth moments of the family satisfy the gaussian identity") {
  for (const BigRat& mu4 : {BigRat(3), BigRat(9)}) {
    auto sigma = [&](int a, int b) { return limiting_covariance(a, b, mu4); };
    for (int p = 1; p <= 4; ++p) {
      std::vector<int> labels(4, p);
      const BigRat var = limiting_covariance(p, p, mu4);
      CHECK(gaussian_mixed_moment(labels, sigma) == 3 * var * var);
    }
  }
}

TEST_CASE("distribution fourth moments feed the covariance") {
  CHECK(make_distribution(DistKind::Gaussian).moments.mu4() == 3);
  CHECK(make_distribution(DistKind::Rademacher).moments.mu4() == 1);
  CHECK(make_distribution(DistKind::Uniform).moments.mu4() == BigRat(9, 5));
  CHECK(make_distribution(DistKind::ShiftedExponential).moments.mu4() == 9);
  // the rademacher law erases the k = 1 term entirely
  CHECK(limiting_covariance(1, 1, make_distribution(DistKind::Rademacher).moments.mu4()) == 0);
  CHECK(limiting_covariance(2, 2, make_distribution(DistKind::Rademacher).moments.mu4()) ==
        BigRat(16, 3));
}
