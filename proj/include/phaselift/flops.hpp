#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace phaselift {

// Flop convention: every real add/mul/div/sqrt counts 1. Composite costs
// used throughout: complex multiply 6, complex add 2, complex multiply-add 8,
// real multiply-add 2. Counters tally the work loops actually execute.
inline constexpr std::uint64_t kCMul = 6;
inline constexpr std::uint64_t kCAdd = 2;
inline constexpr std::uint64_t kCMulAdd = 8;

enum class Phase : int {
  kPrecompute = 0,
  kGradient,
  kLineSearch,
  kProjection,
  kCUpdate,
  kDUpdate,
  kEUpdate,
  kExtract,
  kCount_,
};

inline constexpr std::size_t kNumPhases = static_cast<std::size_t>(Phase::kCount_);

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kPrecompute: return "precompute";
    case Phase::kGradient: return "gradient";
    case Phase::kLineSearch: return "line_search";
    case Phase::kProjection: return "projection";
    case Phase::kCUpdate: return "c_update";
    case Phase::kDUpdate: return "d_update";
    case Phase::kEUpdate: return "e_update";
    case Phase::kExtract: return "extract";
    default: return "?";
  }
}

struct FlopCounter {
  std::array<std::uint64_t, kNumPhases> by_phase{};

  void add(Phase p, std::uint64_t n) { by_phase[static_cast<std::size_t>(p)] += n; }
  std::uint64_t get(Phase p) const { return by_phase[static_cast<std::size_t>(p)]; }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto v : by_phase) t += v;
    return t;
  }

  FlopCounter& operator+=(const FlopCounter& o) {
    for (std::size_t i = 0; i < kNumPhases; ++i) by_phase[i] += o.by_phase[i];
    return *this;
  }
};

// Counting helper tolerating a null counter.
inline void count_flops(FlopCounter* fc, Phase p, std::uint64_t n) {
  if (fc) fc->add(p, n);
}

}  // namespace phaselift
