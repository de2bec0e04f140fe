#pragma once

#include <cstdint>

namespace lowdim {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Sub-seed for trial `index` of a run seeded with `seed`. Trials seeded this
/// way are independent of the order in which they are executed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Counter-based generator: every draw is a pure function of (seed, counter),
/// so draws can be made in any order or in parallel with identical results.
///
/// bits(c) is the c-th output of a SplitMix64 stream whose state starts at
/// mix64(seed). uniform(c) maps the top 53 bits onto the open interval (0, 1).
/// normal(c) is Box-Muller over the uniform pair (2*(c/2), 2*(c/2)+1); even
/// counters take the cosine branch, odd counters the sine branch.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t bits(std::uint64_t counter) const noexcept;
  double uniform(std::uint64_t counter) const noexcept;
  double normal(std::uint64_t counter) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace lowdim
