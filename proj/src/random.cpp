#include "dyadic/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace dyadic {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = engine_(); while (x >= limit);
  return x % n;
}

double Rng::normal() {
  const double u = 1.0 - uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

StepFunction random_function(int depth, Rng& rng) {
  const std::size_t n = std::size_t{1} << depth;
  std::vector<double> cells(n, 0.0);
  switch (rng.below(6)) {
    case 0:
      for (double& v : cells) v = rng.normal();
      break;
    case 1:
      for (double& v : cells) v = static_cast<double>(rng.below(7)) - 3.0;
      break;
    case 2: {
      const std::size_t spikes = 1 + rng.below(4);
      for (std::size_t s = 0; s < spikes; ++s) cells[rng.below(n)] += rng.uniform(-20.0, 20.0);
      break;
    }
    case 3:
      for (double& v : cells) v = std::pow(rng.uniform(0.0, 1.0), -0.7) * (rng.chance(0.5) ? 1 : -1);
      break;
    case 4: {
      // Plateaus nested around one cell, growing geometrically inwards.
      const std::size_t centre = rng.below(n);
      const int step = 2 + static_cast<int>(rng.below(2));
      const double growth = rng.uniform(2.0, 10.0);
      double height = rng.uniform(0.5, 2.0);
      for (int level = step; level <= depth; level += step, height *= growth) {
        const std::size_t span = n >> level;
        const std::size_t start = centre / span * span;
        for (std::size_t i = start; i < start + span; ++i) cells[i] += height;
      }
      break;
    }
    default: {
      const int block_level = static_cast<int>(rng.below(depth + 1));
      const std::size_t span = n >> block_level;
      for (std::size_t b = 0; b < n; b += span) {
        const double v = rng.normal();
        for (std::size_t i = b; i < b + span; ++i) cells[i] = v;
      }
      break;
    }
  }
  return StepFunction(depth, std::move(cells));
}

StepFunction random_integer_function(int depth, Rng& rng, int range) {
  std::vector<double> cells(std::size_t{1} << depth);
  for (double& v : cells)
    v = static_cast<double>(rng.below(2 * range + 1)) - static_cast<double>(range);
  return StepFunction(depth, std::move(cells));
}

StepFunction random_weight(int depth, Rng& rng) {
  std::vector<double> cells(std::size_t{1} << depth);
  const double spread = rng.uniform(0.1, 3.0);
  for (double& v : cells) {
    v = std::exp(spread * rng.normal());
    if (rng.chance(0.02)) v *= std::exp(rng.uniform(-8.0, 8.0));
  }
  return StepFunction(depth, std::move(cells));
}

}  // namespace dyadic
