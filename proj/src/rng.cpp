#include "rcfluct/rng.hpp"

#include <cmath>
#include <numbers>

namespace rcfluct {

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t substream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed),
      static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(substream),
      static_cast<std::uint32_t>(substream >> 32),
  };
  gen_.seed(seq);
}

std::uint64_t RandomStream::bits() { return gen_(); }

double RandomStream::uniform() {
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 1 - uniform() lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

double RandomStream::sign() { return (bits() >> 63) ? 1.0 : -1.0; }

}  // namespace rcfluct
