#include "mfg/rng.hpp"

#include "mfg/types.hpp"

namespace mfg {

namespace {

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // Sponge over a 64-bit bijection: for a fixed seed, distinct (a, b) give
  // distinct engine seeds, and 64-bit mt19937_64 seeding is fully specified,
  // so child streams are identical across standard libraries. Far cheaper
  // than std::seed_seq, which dominates short simulations.
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return Rng(h);
}

int Rng::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w > 0.0) total += w;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::invalid_argument,
                "categorical: no positive weight");
  }
  const double u = uniform01() * total;
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = static_cast<int>(i);
    if (u < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace mfg
