#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rcfluct/index_vector.hpp"

namespace rcfluct {

/// Default cap on raw tuples scanned by a brute-force enumeration. Brute
/// force is an oracle, not a production path; over-budget queries fail
/// cleanly with budget_error before any work happens.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

/// Which alternating-sum constraint the enumerated tuples must satisfy.
enum class Balance {
  ZeroModN,    // alternating sum == 0 (mod n), mathematical residue
  ExactLevel,  // alternating sum == level * n
};

/// Optional distinctness requirement on the entries. The chained-inequality
/// notation i_1 != i_2 != ... is read as pairwise distinct (the matching
/// counts that use these sets permute odd and even positions independently,
/// which presupposes distinct values); the consecutive reading is kept as a
/// comparison mode.
enum class Distinctness { None, Pairwise, Consecutive };

struct TupleQuery {
  int n = 1;        // entries range over [1, n]
  int length = 2;   // tuple length 2p, even and >= 2
  Balance balance = Balance::ZeroModN;
  int level = 0;    // s in "alternating sum == s*n"; only for ExactLevel
  Distinctness distinctness = Distinctness::None;
};

using TupleVisitor = std::function<void(const IndexVector&)>;

/// Streams every tuple satisfying the query, in lexicographic order on the
/// entries. Throws std::invalid_argument for odd length or n < 1, and
/// budget_error when n^length exceeds the budget.
void for_each_tuple(const TupleQuery& query, const TupleVisitor& visit,
                    std::uint64_t budget = kEnumerationBudget);

/// Materializes the stream.
std::vector<IndexVector> enumerate_tuples(const TupleQuery& query,
                                          std::uint64_t budget = kEnumerationBudget);

/// Cardinality of the stream, by enumeration.
std::uint64_t count_tuples(const TupleQuery& query,
                           std::uint64_t budget = kEnumerationBudget);

}  // namespace rcfluct
