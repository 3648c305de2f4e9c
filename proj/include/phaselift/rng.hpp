#pragma once

#include <cstdint>
#include <random>

#include "phaselift/complex_matrix.hpp"

namespace phaselift {

// splitmix64 step; the usual seed-spreading primitive.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Deterministic per-task seed derivation from a master seed and up to three
// stream labels (trial index, grid index, purpose tag, ...).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

// mt19937_64 with a fixed-consumption Box-Muller normal generator, so the
// stream is reproducible across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  cd complex_normal();  // circularly symmetric, unit variance per entry
  bool bit() { return (next_u64() >> 63) != 0; }

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace phaselift
