#include "rcfluct/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "rcfluct/errors.hpp"

namespace rcfluct {

bool is_value_odd_even_pair_matched(const IndexVector& v, int value) {
  int odd = 0, even = 0;
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (v.entries[i] != value) continue;
    // position i+1 is 1-based
    if (i % 2 == 0) ++odd; else ++even;
  }
  return odd == even;
}

bool is_odd_even_pair_matched(const IndexVector& v) {
  if (v.entries.size() % 2 != 0)
    throw std::invalid_argument("is_odd_even_pair_matched: tuple length must be even");
  for (const auto& [value, mult] : value_multiset(v))
    if (!is_value_odd_even_pair_matched(v, value)) return false;
  return true;
}

bool are_connected(const IndexVector& a, const IndexVector& b) {
  std::set<int> sa(a.entries.begin(), a.entries.end());
  for (int e : b.entries)
    if (sa.count(e)) return true;
  return false;
}

int cross_multiplicity(const std::vector<IndexVector>& vectors, int value) {
  int count = 0;
  for (const auto& v : vectors)
    if (std::find(v.entries.begin(), v.entries.end(), value) != v.entries.end())
      ++count;
  return count;
}

ClusterPartition partition_into_clusters(const std::vector<IndexVector>& vectors) {
  if (vectors.empty())
    throw std::invalid_argument("partition_into_clusters: empty input");

  const std::size_t m = vectors.size();

  // Union via shared values: the first tuple seen with a value becomes the
  // representative that later holders of the value are merged into.
  std::vector<std::size_t> parent(m);
  for (std::size_t i = 0; i < m; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::map<int, std::size_t> first_holder;
  std::map<int, std::set<std::size_t>> holders;
  for (std::size_t i = 0; i < m; ++i) {
    for (int e : vectors[i].entries) {
      holders[e].insert(i);
      auto [it, inserted] = first_holder.try_emplace(e, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }

  ClusterPartition out;
  std::map<std::size_t, std::size_t> root_to_cluster;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = find(i);
    auto [it, inserted] = root_to_cluster.try_emplace(r, out.clusters.size());
    if (inserted) out.clusters.emplace_back();
    out.clusters[it->second].push_back(i);
  }
  for (const auto& [value, who] : holders)
    out.cross_multiplicities[value] = static_cast<int>(who.size());
  return out;
}

namespace {

/// Leaf check for count_cluster_tuples: every value's total multiplicity is
/// at least two and the l tuples form one connected component.
bool is_single_cluster_all_matched(const std::vector<const IndexVector*>& js) {
  std::map<int, int> mult;
  for (const auto* j : js)
    for (int e : j->entries) ++mult[e];
  for (const auto& [value, count] : mult)
    if (count < 2) return false;

  const std::size_t l = js.size();
  std::vector<std::size_t> parent(l);
  for (std::size_t i = 0; i < l; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<int, std::size_t> first_holder;
  for (std::size_t i = 0; i < l; ++i)
    for (int e : js[i]->entries) {
      auto [it, inserted] = first_holder.try_emplace(e, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  std::size_t root = find(0);
  for (std::size_t i = 1; i < l; ++i)
    if (find(i) != root) return false;
  return true;
}

}  // namespace

BigInt count_cluster_tuples(int n, const std::vector<int>& two_ps,
                            std::uint64_t budget) {
  if (two_ps.size() < 2)
    throw std::invalid_argument("count_cluster_tuples: need at least two tuple lengths");
  for (int tp : two_ps)
    if (tp < 2 || tp % 2 != 0)
      throw std::invalid_argument("count_cluster_tuples: lengths must be even and >= 2");

  // Work estimate: each pool scan costs n^len, the cross product costs the
  // product of pool sizes (n^{len-1} balanced tuples per pool).
  double raw = 0.0, cross = 1.0;
  for (int tp : two_ps) {
    raw += std::pow(static_cast<double>(n), tp);
    cross *= std::pow(static_cast<double>(n), tp - 1);
  }
  raw += cross;
  if (raw > static_cast<double>(budget))
    throw budget_error("count_cluster_tuples: scan over budget", raw,
                       static_cast<double>(budget));

  std::vector<std::vector<IndexVector>> pools;
  pools.reserve(two_ps.size());
  for (int tp : two_ps)
    pools.push_back(enumerate_tuples({.n = n, .length = tp}, budget));

  BigInt count = 0;
  std::vector<const IndexVector*> chosen(two_ps.size(), nullptr);
  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == pools.size()) {
      if (is_single_cluster_all_matched(chosen)) ++count;
      return;
    }
    for (const auto& j : pools[depth]) {
      chosen[depth] = &j;
      descend(depth + 1);
    }
  };
  descend(0);
  return count;
}

std::vector<ClusterScanRow> cluster_scaling_scan(const std::vector<int>& two_ps,
                                                 const std::vector<int>& n_values,
                                                 std::uint64_t budget) {
  double exponent = 0.0;  // sum p_i - l/2
  for (int tp : two_ps) exponent += tp / 2.0;
  exponent -= two_ps.size() / 2.0;

  std::vector<ClusterScanRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    BigInt c = count_cluster_tuples(n, two_ps, budget);
    rows.push_back({n, c, to_double(c) / std::pow(static_cast<double>(n), exponent)});
  }
  return rows;
}

}  // namespace rcfluct
