#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "rcfluct/errors.hpp"
#include "rcfluct/moments.hpp"
#include "rcfluct/rc_matrix.hpp"
#include "rcfluct/rng.hpp"
#include "rcfluct/trace.hpp"
#include "rcfluct/tuples.hpp"

using namespace rcfluct;

TEST_CASE("moment profiles carry the exact standardized moments") {
  const MomentProfile g = make_distribution(DistKind::Gaussian).moments;
  REQUIRE(g.order() == kMomentOrder);
  // odd moments vanish, even are double factorials
  BigRat dfact = 1;
  for (int k = 1; k <= 6; ++k) {
    dfact *= 2 * k - 1;
    CHECK(g.moment(2 * k - 1) == 0);
    CHECK(g.moment(2 * k) == dfact);
  }

  const MomentProfile r = make_distribution(DistKind::Rademacher).moments;
  for (int k = 1; k <= kMomentOrder; ++k)
    CHECK(r.moment(k) == (k % 2 == 0 ? 1 : 0));

  const MomentProfile u = make_distribution(DistKind::Uniform).moments;
  BigRat three_pow = 1;
  for (int k = 1; k <= 6; ++k) {
    three_pow *= 3;
    CHECK(u.moment(2 * k - 1) == 0);
    CHECK(u.moment(2 * k) == three_pow / (2 * k + 1));
  }

  // central moments of a unit exponential obey d_k = k d_{k-1} + (-1)^k
  const MomentProfile e = make_distribution(DistKind::ShiftedExponential).moments;
  BigRat prev = 1;  // d_0
  for (int k = 1; k <= kMomentOrder; ++k) {
    BigRat cur = k * prev + (k % 2 == 0 ? 1 : -1);
    CHECK(e.moment(k) == cur);
    prev = cur;
  }
}

TEST_CASE("all entry laws are standardized") {
  for (DistKind kind : {DistKind::Gaussian, DistKind::Rademacher, DistKind::Uniform,
                        DistKind::ShiftedExponential}) {
    const MomentProfile m = make_distribution(kind).moments;
    CHECK(m.moment(1) == 0);
    CHECK(m.moment(2) == 1);
    CHECK(m.mu4() >= 1);
    CHECK_THROWS_AS(m.moment(0), std::invalid_argument);
    CHECK_THROWS_AS(m.moment(kMomentOrder + 1), std::invalid_argument);
  }
}

TEST_CASE("distribution names round-trip") {
  for (DistKind kind : {DistKind::Gaussian, DistKind::Rademacher, DistKind::Uniform,
                        DistKind::ShiftedExponential})
    CHECK(distribution_from_name(to_string(kind)).kind == kind);
  CHECK_THROWS_AS(distribution_from_name("cauchy"), std::invalid_argument);
}

TEST_CASE("random streams are reproducible and substream-separated") {
  RandomStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool all_equal = true, differs_sub = false, differs_master = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.bits();
    all_equal &= (va == b.bits());
    differs_sub |= (va != c.bits());
    differs_master |= (va != d.bits());
  }
  CHECK(all_equal);
  CHECK(differs_sub);
  CHECK(differs_master);

  RandomStream e(7, 3), f(7, 3);
  for (int i = 0; i < 32; ++i) {
    CHECK(e.uniform() == f.uniform());
    CHECK(e.normal() == f.normal());
  }
}

TEST_CASE("uniform and sign draws stay in range") {
  RandomStream rs(1234, 0);
  double mean = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = rs.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mean += u;
  }
  mean /= draws;
  // mean of U(0,1): sd of the average is 1/sqrt(12 draws)
  CHECK(std::abs(mean - 0.5) < 5.0 / std::sqrt(12.0 * draws));

  std::set<double> signs;
  for (int i = 0; i < 100; ++i) signs.insert(rs.sign());
  CHECK(signs == std::set<double>{-1.0, 1.0});
}

TEST_CASE("samples respect the support of each law") {
  RandomStream rs(99, 0);
  for (int i = 0; i < 20000; ++i) {
    const double u = sample_one(DistKind::Uniform, rs);
    CHECK(std::abs(u) <= std::sqrt(3.0) + 1e-12);
    const double r = sample_one(DistKind::Rademacher, rs);
    CHECK((r == 1.0 || r == -1.0));
    CHECK(sample_one(DistKind::ShiftedExponential, rs) >= -1.0);
    CHECK(std::isfinite(sample_one(DistKind::Gaussian, rs)));
  }
}

TEST_CASE("sampled moments match the declared profiles") {
  for (DistKind kind : {DistKind::Gaussian, DistKind::Rademacher, DistKind::Uniform,
                        DistKind::ShiftedExponential}) {
    const double z = moment_profile_max_z(make_distribution(kind), 515, 1000000, 8);
    CHECK(std::isfinite(z));
    CHECK(z < 5.0);
  }
}

TEST_CASE("matrix layout: one-step left shifts of the entry vector") {
  const RCMatrix m = build_rc({1.0, 2.0, 3.0}, 3);
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(m.entry(1, 1) == doctest::Approx(1.0 * s));
  CHECK(m.entry(1, 2) == doctest::Approx(2.0 * s));
  CHECK(m.entry(1, 3) == doctest::Approx(3.0 * s));
  CHECK(m.entry(2, 1) == doctest::Approx(2.0 * s));
  CHECK(m.entry(2, 2) == doctest::Approx(3.0 * s));
  CHECK(m.entry(2, 3) == doctest::Approx(1.0 * s));
  CHECK(m.entry(3, 3) == doctest::Approx(2.0 * s));

  const Eigen::MatrixXd d = m.dense();
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      CHECK(d(i - 1, j - 1) == m.entry(i, j));
      CHECK(m.entry(i, j) == m.entry(j, i));  // symmetric
    }
}

TEST_CASE("matrix rows shift left going down") {
  const RCMatrix m = build_rc({4.0, -1.0, 0.5, 2.0, 7.0}, 5);
  for (int i = 1; i < 5; ++i)
    for (int j = 1; j <= 5; ++j)
      CHECK(m.entry(i + 1, j) == m.entry(i, j % 5 + 1));
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(build_rc({1.0, 2.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_rc({}, 0), std::invalid_argument);
  const RCMatrix m = build_rc({1.0, 2.0}, 2);
  CHECK_THROWS_AS(m.entry(0, 1), std::out_of_range);
  CHECK_THROWS_AS(m.entry(1, 3), std::out_of_range);
}

TEST_CASE("trace of a 1x1 matrix is the entry power") {
  const RCMatrix m = build_rc({1.5}, 1);
  for (int two_p : {2, 4, 6}) {
    const double expect = std::pow(1.5, two_p);
    CHECK(trace_power_dense(m, two_p) == doctest::Approx(expect));
    CHECK(trace_power_spectral(m, two_p) == doctest::Approx(expect));
    CHECK(trace_power_fast(m, two_p) == doctest::Approx(expect));
  }
}

TEST_CASE("single-impulse entries at n=4 have unit squared trace") {
  const RCMatrix m = build_rc({1.0, 0.0, 0.0, 0.0}, 4);
  CHECK(trace_power_dense(m, 2) == doctest::Approx(1.0));
  CHECK(trace_power_spectral(m, 2) == doctest::Approx(1.0));
  CHECK(trace_power_fast(m, 2) == doctest::Approx(1.0));
}

TEST_CASE("n=2 traces follow the closed eigenvalue form") {
  // eigenvalues are (a+b)/sqrt(2) and (a-b)/sqrt(2)
  const double a = 0.8, b = -2.5;
  const RCMatrix m = build_rc({a, b}, 2);
  for (int two_p : {2, 4, 6}) {
    const double expect = (std::pow((a + b) / std::sqrt(2.0), two_p) +
                           std::pow((a - b) / std::sqrt(2.0), two_p));
    for (TracePath path : {TracePath::Dense, TracePath::Spectral, TracePath::Fast})
      CHECK(trace_power(m, two_p, path) == doctest::Approx(expect));
  }
}

TEST_CASE("three trace routes agree on random instances") {
  RandomStream rs(2024, 0);
  for (int n : {2, 3, 5, 8, 16, 33}) {
    std::vector<double> x(n);
    for (double& v : x) v = rs.normal();
    const RCMatrix m = build_rc(x, n);
    for (int two_p : {2, 4, 6, 8}) {
      const double ds = trace_power_dense(m, two_p);
      const double sp = trace_power_spectral(m, two_p);
      const double ft = trace_power_fast(m, two_p);
      const double scale = std::max(1.0, std::abs(sp));
      CHECK(std::abs(ds - sp) <= 1e-8 * scale);
      CHECK(std::abs(ft - sp) <= 1e-8 * scale);
    }
    // squared trace identity: Tr M^2 == sum of raw entries squared
    const double ssq = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    CHECK(trace_power_dense(m, 2) == doctest::Approx(ssq).epsilon(1e-10));
    CHECK(trace_power_fast(m, 2) == doctest::Approx(ssq).epsilon(1e-10));
  }
}

TEST_CASE("fast spectrum lists one squared eigenvalue per index") {
  RandomStream rs(5, 1);
  for (int n : {2, 3, 6, 7, 12}) {
    std::vector<double> x(n);
    for (double& v : x) v = rs.normal();
    const RCMatrix m = build_rc(x, n);
    std::vector<double> sq = fast_squared_spectrum(m);
    REQUIRE(static_cast<int>(sq.size()) == n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(),
                                                      Eigen::EigenvaluesOnly);
    std::vector<double> expect(n);
    for (int i = 0; i < n; ++i) expect[i] = es.eigenvalues()[i] * es.eigenvalues()[i];
    std::sort(expect.begin(), expect.end());
    std::sort(sq.begin(), sq.end());
    for (int i = 0; i < n; ++i) CHECK(sq[i] == doctest::Approx(expect[i]));
  }
}

TEST_CASE("fast path self-check accepts healthy input") {
  RandomStream rs(6, 0);
  std::vector<double> x(16);
  for (double& v : x) v = rs.normal();
  CHECK_NOTHROW(trace_power_fast(build_rc(x, 16), 4, true));
}

TEST_CASE("odd or zero powers are rejected") {
  const RCMatrix m = build_rc({1.0, 2.0}, 2);
  for (TracePath path : {TracePath::Dense, TracePath::Spectral, TracePath::Fast}) {
    CHECK_THROWS_AS(trace_power(m, 3, path), std::invalid_argument);
    CHECK_THROWS_AS(trace_power(m, 0, path), std::invalid_argument);
    CHECK_THROWS_AS(trace_power(m, -2, path), std::invalid_argument);
  }
}

TEST_CASE("trace path names round-trip") {
  for (TracePath path : {TracePath::Dense, TracePath::Spectral, TracePath::Fast})
    CHECK(trace_path_from_name(to_string(path)) == path);
  CHECK_THROWS_AS(trace_path_from_name("magic"), std::invalid_argument);
}

TEST_CASE("unscaled integer traces equal the tuple-sum formula exactly") {
  // Tr[(RC_n)^{2p}] == n * sum over balanced tuples of the entry products;
  // integer entries keep every double operation exact.
  RandomStream rs(31, 2);
  for (int n : {1, 2, 3, 4}) {
    for (int p : {1, 2}) {
      std::vector<double> x(n);
      for (double& v : x) v = static_cast<double>(static_cast<int>(rs.bits() % 7)) - 3.0;
      RCMatrix unscaled{n, x, 1.0};

      double tuple_sum = 0.0;
      for_each_tuple({.n = n, .length = 2 * p}, [&](const IndexVector& v) {
        double prod = 1.0;
        for (int e : v.entries) prod *= x[static_cast<std::size_t>(e) - 1];
        tuple_sum += prod;
      });

      CHECK(trace_power_dense(unscaled, 2 * p) == n * tuple_sum);
    }
  }
}
