#pragma once

#include <cstdint>
#include <random>

namespace skelshrink {

// Deterministic random stream. All randomness in the library flows through an
// explicitly seeded instance of this class; mt19937_64 and the draw algorithms
// below are fully specified, so a seed reproduces the same stream on any platform.
// Not safe to share across threads without external coordination.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (std::normal_distribution is not
  // reproducible across standard library implementations).
  double normal();

  // Poisson draw: sequential-search inversion for small means,
  // transformed rejection (PTRS) otherwise.
  std::int64_t poisson(double mean);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace skelshrink
