#include <doctest.h>

#include <cmath>
#include <vector>

#include "dyadic/error.hpp"
#include "dyadic/random.hpp"
#include "dyadic/rearrangement.hpp"
#include "oracles.hpp"

using namespace dyadic;

TEST_CASE("rearrangement examples") {
  const StepFunction f(2, {3, 1, 2, 4});
  CHECK(rearrangement_at(f, DyadicInterval::root(), 0.5) == 2);
  CHECK(rearrangement_at(f, DyadicInterval::root(), 0.25) == 3);
  CHECK(rearrangement_at(StepFunction::constant(3, -2), {1, 1}, 0.1) == 2);
  CHECK_THROWS_AS(rearrangement_at(f, DyadicInterval::root(), 0.0), Error);
  CHECK_THROWS_AS(rearrangement_at(f, {1, 0}, 0.75), Error);
}

TEST_CASE("rearrangement agrees with counting oracle") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const int depth = 1 + static_cast<int>(rng.below(6));
    const StepFunction f = random_function(depth, rng);
    const std::vector<double> v(f.cells().begin(), f.cells().end());
    for (int k = 1; k <= static_cast<int>(v.size()); ++k) {
      const double s = k * f.cell_width();
      CHECK(rearrangement_at(f, DyadicInterval::root(), s) == oracle::rearrangement(v, f.cell_width(), s));
    }
    const double s = rng.uniform(1e-9, 1.0);
    CHECK(rearrangement_at(f, DyadicInterval::root(), s) == oracle::rearrangement(v, f.cell_width(), s));
  }
}

TEST_CASE("median examples") {
  const StepFunction f(2, {1, 2, 3, 4});
  CHECK(median(f, DyadicInterval::root()) == 2);
  const MedianInterval m = median_interval(f, DyadicInterval::root());
  CHECK(m.low == 2);
  CHECK(m.high == 3);
  CHECK(median(StepFunction::constant(3, 7), {2, 1}) == 7);
  CHECK(median_interval(StepFunction(2, {5, 1, 5, 5}), DyadicInterval::root()).low == 5);
}

TEST_CASE("oscillation examples") {
  const StepFunction f(2, {0, 0, 0, 1});
  CHECK(local_mean_oscillation(f, DyadicInterval::root(), 0.25).value == 0);
  const Oscillation o = local_mean_oscillation(f, DyadicInterval::root(), 0.125);
  CHECK(o.value == 0.5);
  CHECK(o.center == 0.5);
  CHECK(local_mean_oscillation(StepFunction::constant(4, 3), {1, 0}, 0.3).value == 0);
  CHECK_THROWS_AS(local_mean_oscillation(f, DyadicInterval::root(), 1.0), Error);
  CHECK_THROWS_AS(local_mean_oscillation(f, DyadicInterval::root(), 0.0), Error);
}

// Brute force over every c in {values} U {midpoints}, evaluated by counting.
TEST_CASE("oscillation equals brute-force minimization") {
  Rng rng(22);
  for (int t = 0; t < 60; ++t) {
    const int depth = 1 + static_cast<int>(rng.below(5));
    const StepFunction f = random_function(depth, rng);
    const std::vector<double> v(f.cells().begin(), f.cells().end());
    for (double lambda : {0.125, 0.25, 0.3, 0.5, 0.75}) {
      double best = INFINITY;
      std::vector<double> centers = v;
      for (double a : v)
        for (double b : v) centers.push_back(a / 2 + b / 2);
      for (double c : centers) {
        std::vector<double> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] - c;
        best = std::min(best, oracle::rearrangement(w, 1.0 / v.size(), lambda));
      }
      const double fast = local_mean_oscillation(f, DyadicInterval::root(), lambda).value;
      CHECK(std::fabs(fast - best) <= 1e-12 * (1 + std::fabs(best)));
    }
  }
}

TEST_CASE("local sharp maximal examples") {
  const StepFunction f(1, {1, -1});
  const StepFunction m = local_sharp_maximal_dyadic(f, DyadicInterval::root(), 0.25);
  CHECK(m[0] == 1);
  CHECK(m[1] == 1);
  const StepFunction z = local_sharp_maximal_dyadic(StepFunction::constant(5, 2), DyadicInterval::root(), 0.25);
  for (double v : z.cells()) CHECK(v == 0);
}

TEST_CASE("local sharp maximal is monotone in lambda and matches serial") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const StepFunction f = random_function(7, rng);
    const DyadicInterval q0{static_cast<int>(rng.below(3)), 0};
    const StepFunction a = local_sharp_maximal_dyadic(f, q0, 0.125);
    const StepFunction b = local_sharp_maximal_dyadic(f, q0, 0.25);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(a[i] >= b[i]);
    const StepFunction s = serial::local_sharp_maximal_dyadic(f, q0, 0.125);
    CHECK(std::equal(a.cells().begin(), a.cells().end(), s.cells().begin()));
  }
}

TEST_CASE("chain maximum picks the largest oscillation on the chain") {
  Rng rng(24);
  const StepFunction f = random_function(5, rng);
  const StepFunction m = local_sharp_maximal_dyadic(f, DyadicInterval::root(), 0.25);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double best = 0;
    for (int l = 0; l <= 5; ++l)
      best = std::max(best, local_mean_oscillation(f, {l, static_cast<std::int64_t>(i >> (5 - l))}, 0.25).value);
    CHECK(m[i] == best);
  }
}
