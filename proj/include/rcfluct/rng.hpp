#pragma once

// Seeded random streams. A master seed plus a substream index fully determine
// the draw sequence, so replicate r always sees the same entries no matter how
// the replicates are scheduled.

#include <cstdint>
#include <random>

namespace rcfluct {

class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t substream);

  std::uint64_t bits();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal (Box-Muller; draws two uniforms per pair).
  double normal();

  /// Fair draw from {-1.0, +1.0}.
  double sign();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rcfluct
