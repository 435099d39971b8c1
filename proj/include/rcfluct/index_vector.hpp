#pragma once

#include <map>
#include <stdexcept>
#include <vector>

namespace rcfluct {

/// An ordered tuple of indices from {1,...,n}. The quantity of interest is
/// its alternating sum sum_{k=1}^{len} (-1)^k i_k (1-based positions, so the
/// first entry contributes with a minus sign).
struct IndexVector {
  std::vector<int> entries;

  IndexVector() = default;
  IndexVector(std::initializer_list<int> init) : entries(init) {}
  explicit IndexVector(std::vector<int> e) : entries(std::move(e)) {}

  std::size_t size() const { return entries.size(); }
  bool operator==(const IndexVector&) const = default;
  auto operator<=>(const IndexVector& other) const {
    return entries <=> other.entries;  // lexicographic
  }
};

/// Multiset of the values occurring in a tuple, value -> multiplicity.
using IndexMultiset = std::map<int, int>;

inline IndexMultiset value_multiset(const IndexVector& v) {
  IndexMultiset m;
  for (int e : v.entries) ++m[e];
  return m;
}

/// sum_{k=1}^{2p} (-1)^k i_k. Requires a nonempty even-length tuple.
inline long long alternating_sum(const IndexVector& v) {
  if (v.entries.empty() || v.entries.size() % 2 != 0)
    throw std::invalid_argument("alternating_sum: tuple length must be even and positive");
  long long s = 0;
  int sign = -1;
  for (int e : v.entries) {
    s += sign * static_cast<long long>(e);
    sign = -sign;
  }
  return s;
}

/// True iff every entry lies in [1, n].
inline bool in_index_range(const IndexVector& v, int n) {
  for (int e : v.entries)
    if (e < 1 || e > n) return false;
  return true;
}

}  // namespace rcfluct
