#include "rcfluct/tuples.hpp"

#include <cmath>
#include <stdexcept>

#include "rcfluct/errors.hpp"

namespace rcfluct {

namespace {

long long mod_residue(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

struct Enumerator {
  const TupleQuery& q;
  const TupleVisitor& visit;
  IndexVector current;
  std::vector<bool> used;  // pairwise-distinct bookkeeping

  void descend(int pos, long long alt) {
    if (pos == q.length) {
      bool ok = q.balance == Balance::ZeroModN
                    ? mod_residue(alt, q.n) == 0
                    : alt == static_cast<long long>(q.level) * q.n;
      if (ok) visit(current);
      return;
    }
    int sign = (pos % 2 == 0) ? -1 : 1;  // 1-based position pos+1
    for (int v = 1; v <= q.n; ++v) {
      if (q.distinctness == Distinctness::Pairwise && used[v]) continue;
      if (q.distinctness == Distinctness::Consecutive && pos > 0 &&
          current.entries[pos - 1] == v)
        continue;
      current.entries[pos] = v;
      if (q.distinctness == Distinctness::Pairwise) used[v] = true;
      descend(pos + 1, alt + sign * v);
      if (q.distinctness == Distinctness::Pairwise) used[v] = false;
    }
  }
};

}  // namespace

void for_each_tuple(const TupleQuery& query, const TupleVisitor& visit,
                    std::uint64_t budget) {
  if (query.n < 1) throw std::invalid_argument("for_each_tuple: n must be >= 1");
  if (query.length < 2 || query.length % 2 != 0)
    throw std::invalid_argument("for_each_tuple: tuple length must be even and >= 2");

  double raw = std::pow(static_cast<double>(query.n), query.length);
  if (raw > static_cast<double>(budget))
    throw budget_error("for_each_tuple: enumeration over budget", raw,
                       static_cast<double>(budget));

  Enumerator e{query, visit, IndexVector(std::vector<int>(query.length, 0)),
               std::vector<bool>(query.n + 1, false)};
  e.descend(0, 0);
}

std::vector<IndexVector> enumerate_tuples(const TupleQuery& query,
                                          std::uint64_t budget) {
  std::vector<IndexVector> out;
  for_each_tuple(query, [&](const IndexVector& v) { out.push_back(v); }, budget);
  return out;
}

std::uint64_t count_tuples(const TupleQuery& query, std::uint64_t budget) {
  std::uint64_t count = 0;
  for_each_tuple(query, [&](const IndexVector&) { ++count; }, budget);
  return count;
}

}  // namespace rcfluct
