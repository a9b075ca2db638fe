#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace duelbench {

// splitmix64 finalizer; used to derive independent per-run seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for run `index` of an experiment seeded with `base`.
std::uint64_t run_seed(std::uint64_t base, std::uint64_t index) noexcept;

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the C++ standard; conversions to doubles and integers are done
// here rather than through <random> distributions, which are not portable.
// Golden traces depend on both, so changing either is a breaking change.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}; n must be positive.
  std::size_t below(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace duelbench
