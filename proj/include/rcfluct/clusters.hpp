#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rcfluct/exact.hpp"
#include "rcfluct/index_vector.hpp"
#include "rcfluct/tuples.hpp"

namespace rcfluct {

/// True iff `value` occurs in v the same number of times at odd and at even
/// positions (1-based). A value that does not occur at all is matched.
bool is_value_odd_even_pair_matched(const IndexVector& v, int value);

/// True iff every value of the tuple is odd-even pair matched; such a tuple
/// necessarily has alternating sum zero.
bool is_odd_even_pair_matched(const IndexVector& v);

/// Two tuples are connected when their value multisets share at least one
/// value.
bool are_connected(const IndexVector& a, const IndexVector& b);

/// Number of distinct tuples in the list whose value set contains `value`.
/// The value is called cross-matched when this is >= 2.
int cross_multiplicity(const std::vector<IndexVector>& vectors, int value);

/// Partition of a list of tuples into maximal shared-value-connected groups.
struct ClusterPartition {
  /// Each cluster holds indices into the input list; clusters are ordered by
  /// their smallest member, members in increasing order.
  std::vector<std::vector<std::size_t>> clusters;
  /// value -> number of distinct tuples containing it.
  std::map<int, int> cross_multiplicities;
};

/// Connected components of the graph whose edges join tuples sharing a
/// value. Within a component any two tuples are joined by a chain of
/// connected neighbours, and no value occurs in two different components.
ClusterPartition partition_into_clusters(const std::vector<IndexVector>& vectors);

/// Counts tuples (J_1,...,J_l), J_i ranging over the zero-mod-n tuples of
/// length two_ps[i], such that all l of them form a single cluster and every
/// value of the combined multiset has total multiplicity >= 2.
/// Requires l >= 2; the scan cost (pool enumeration plus the cross product
/// of the pool sizes) must fit the budget.
BigInt count_cluster_tuples(int n, const std::vector<int>& two_ps,
                            std::uint64_t budget = kEnumerationBudget);

struct ClusterScanRow {
  int n;
  BigInt count;
  double ratio;  // count / n^(sum p_i - l/2)
};

/// Empirical scaling of the cluster-tuple counts: for each n, the count and
/// its ratio to n^(sum p_i - l/2). Used to confirm the decay trend for
/// l >= 3 and the boundedness (ratio == 1) of the l = 2 equal-exponent case.
std::vector<ClusterScanRow> cluster_scaling_scan(
    const std::vector<int>& two_ps, const std::vector<int>& n_values,
    std::uint64_t budget = kEnumerationBudget);

}  // namespace rcfluct
