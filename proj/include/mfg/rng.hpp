#ifndef MFG_RNG_HPP
#define MFG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace mfg {

// mt19937_64 wrapped with explicit variate mappings so that streams are
// reproducible across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Decorrelated child stream, e.g. per sample or per path.
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }
  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }
  // Index sampled proportionally to nonnegative weights.
  int categorical(std::span<const double> weights);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mfg

#endif  // MFG_RNG_HPP
