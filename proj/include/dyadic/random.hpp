#pragma once

#include <cstdint>
#include <random>

#include "dyadic/step_function.hpp"

namespace dyadic {

// Seeded generator whose output depends only on the seed (the engine output
// is fixed by the standard; distributions are built on raw bits here rather
// than on implementation-defined std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n);
  bool chance(double p) { return uniform() < p; }
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed derived from a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Mixed-family random step function: Gaussian, small integers, sparse spikes,
// heavy-tailed, nested plateaus, and piecewise-constant blocks.
StepFunction random_function(int depth, Rng& rng);

// Integer-valued random step function in [-range, range].
StepFunction random_integer_function(int depth, Rng& rng, int range);

// Strictly positive weight, log-normal-ish with occasional sharp spikes.
StepFunction random_weight(int depth, Rng& rng);

}  // namespace dyadic
