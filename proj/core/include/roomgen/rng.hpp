#pragma once

#include <cstdint>
#include <random>

namespace roomgen {

// Single-owner pseudo-random source. Parallel work never shares an Rng; it
// derives independent child seeds with split_seed instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  // Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi);
  // Uniform integer on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal(double mean, double stddev);
  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> standard_normal_{0.0, 1.0};
};

// Deterministic child-seed derivation (splitmix64 finalizer over the pair).
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

// Beta(0.5, 0.5) sample via the arcsine inverse CDF sin^2(pi*u/2).
double beta_half_from_uniform(double u);
double sample_beta_half(Rng& rng);

}  // namespace roomgen
