#include "rcfluct/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rcfluct/errors.hpp"
#include "rcfluct/tuples.hpp"

namespace rcfluct {

namespace {

BigRat multiset_moment(const IndexMultiset& values, const MomentProfile& moments) {
  BigRat acc = 1;
  for (const auto& [value, mult] : values) {
    if (mult > moments.order())
      throw std::invalid_argument("product_moment: multiplicity exceeds moment order");
    const BigRat& m = moments.moment(mult);
    if (m == 0) return BigRat(0);
    acc *= m;
  }
  return acc;
}

}  // namespace

BigRat product_moment(const IndexVector& v, const MomentProfile& moments) {
  return multiset_moment(value_multiset(v), moments);
}

BigRat product_moment(const IndexVector& a, const IndexVector& b,
                      const MomentProfile& moments) {
  IndexMultiset values = value_multiset(a);
  for (int e : b.entries) ++values[e];
  return multiset_moment(values, moments);
}

BigRat expected_trace_power(int n, int p, const MomentProfile& moments,
                            std::uint64_t budget) {
  if (n < 1 || p < 1)
    throw std::invalid_argument("expected_trace_power: n and p must be >= 1");
  BigRat sum = 0;
  for_each_tuple({.n = n, .length = 2 * p},
                 [&](const IndexVector& v) { sum += product_moment(v, moments); },
                 budget);
  // n^{1-p}: the scaled matrix carries n^{-p}, the trace formula contributes n.
  return sum * BigRat(BigInt(n), pow_int(n, p));
}

BigRat exact_fluctuation_covariance(int n, int p, int q,
                                    const MomentProfile& moments,
                                    std::uint64_t budget) {
  if (n < 1 || p < 1 || q < 1)
    throw std::invalid_argument("exact_fluctuation_covariance: n, p, q must be >= 1");
  const double cost = std::pow(static_cast<double>(n), 2 * (p + q));
  if (cost > static_cast<double>(budget))
    throw budget_error("exact_fluctuation_covariance: enumeration over budget",
                       cost, static_cast<double>(budget));

  struct Entry {
    IndexMultiset values;
    BigRat mean;
    std::uint64_t mask;  // bit v-1 set when value v occurs; n <= 32 here
  };
  auto collect = [&](int two_len) {
    std::vector<Entry> out;
    for_each_tuple({.n = n, .length = two_len},
                   [&](const IndexVector& v) {
                     Entry e;
                     e.values = value_multiset(v);
                     e.mean = multiset_moment(e.values, moments);
                     e.mask = 0;
                     if (n <= 64)
                       for (const auto& [value, mult] : e.values)
                         e.mask |= std::uint64_t{1} << (value - 1);
                     else
                       e.mask = ~std::uint64_t{0};  // disable the disjointness shortcut
                     out.push_back(std::move(e));
                   },
                   budget);
    return out;
  };
  const std::vector<Entry> js = collect(2 * p);
  const std::vector<Entry> ks = collect(2 * q);

  BigRat sum = 0;
  for (const Entry& j : js) {
    for (const Entry& k : ks) {
      // Disjoint tuples are independent, so their term cancels exactly.
      if ((j.mask & k.mask) == 0) continue;
      IndexMultiset joint = j.values;
      for (const auto& [value, mult] : k.values) joint[value] += mult;
      sum += multiset_moment(joint, moments) - j.mean * k.mean;
    }
  }
  // n^{-(p+q-1)} overall: n^{1-p} and n^{1-q} from the traces, n^{-1} from
  // the 1/sqrt(n) on each fluctuation.
  return sum * BigRat(BigInt(n), pow_int(n, p + q));
}

}  // namespace rcfluct
