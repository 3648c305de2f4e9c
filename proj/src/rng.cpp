#include "phaselift/rng.hpp"

#include <cmath>

namespace phaselift {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t s = master;
  std::uint64_t z = splitmix64_next(s);
  s ^= a * 0x9E3779B97F4A7C15ULL;
  z ^= splitmix64_next(s);
  s ^= b * 0xC2B2AE3D27D4EB4FULL;
  z ^= splitmix64_next(s);
  s ^= c * 0x165667B19E3779F9ULL;
  z ^= splitmix64_next(s);
  return z;
}

double Rng::uniform() {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Box-Muller with fixed consumption of two uniforms per pair.
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

cd Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cd(re, im) * M_SQRT1_2;
}

}  // namespace phaselift
