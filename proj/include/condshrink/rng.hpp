#pragma once

#include <cstdint>
#include <random>

namespace condshrink {

// Seedable generator with an explicit Box-Muller normal sampler, so streams
// do not depend on the standard library's distribution implementations.
// Same seed, same stream, on any conforming platform.
// Decorrelated stream seeds from one user seed (splitmix64 scramble).
// Distinct stream tags give independent streams even for adjacent or equal
// user seeds, so e.g. a population basis never shares draws with the data
// sampled from it.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller; u kept away from 0 so the log is finite.
    double u, v;
    do {
      u = uniform01();
    } while (u <= 0.0);
    v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * v);
    have_spare_ = true;
    return r * std::cos(two_pi * v);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace condshrink
