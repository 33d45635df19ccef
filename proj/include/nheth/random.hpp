#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nheth {

// Identifies the generator stack in run provenance. Bump the suffix whenever
// the seeding, engine or Gaussian transform changes.
inline constexpr std::string_view kRngAlgorithmId = "mt19937_64/splitmix64-seed/box-muller/v1";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream seed for one disorder realization. Two rounds of splitmix64 so that
// neighbouring (seed, index) pairs land on unrelated streams.
std::uint64_t derive_realization_seed(std::uint64_t master_seed, std::uint64_t realization_index) noexcept;

// Standard normal deviates from mt19937_64 via the Box-Muller
// transform. Both outputs of each transform are consumed in order.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double standard();
  double normal(double mean, double stddev) { return mean + stddev * standard(); }

  // Uniform on (0, 1], 53 random bits.
  double uniform_open0();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace nheth
