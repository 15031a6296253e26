#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dyadic/error.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/lerner.hpp"
#include "dyadic/random.hpp"
#include "dyadic/rearrangement.hpp"

using namespace dyadic;

TEST_CASE("constant function has an empty decomposition") {
  const StepFunction f = StepFunction::constant(5, 3);
  const LernerDecomposition dec = decompose(f, DyadicInterval::root());
  CHECK(dec.cube_count() == 0);
  CHECK(verify_decomposition(f, dec).passed());
  const StepFunction rhs = oscillation_rhs(f, dec);
  for (double v : rhs.cells()) CHECK(v == 0);
}

TEST_CASE("single spike") {
  const StepFunction f(3, {16, 0, 0, 0, 0, 0, 0, 0});
  const LernerDecomposition dec = decompose(f, DyadicInterval::root());
  REQUIRE(dec.generations.size() == 1);
  REQUIRE(dec.generations[0].size() == 1);
  CHECK(dec.generations[0][0].cube == DyadicInterval{3, 0});
  CHECK(dec.generations[0][0].median == 16);
  CHECK(dec.generations[0][0].parent_oscillation == 8);
  const StepFunction rhs = oscillation_rhs(f, dec);
  CHECK(rhs[0] >= 32);
  CHECK(verify_decomposition(f, dec).passed());
}

TEST_CASE("random decompositions verify") {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const StepFunction f = random_function(8, rng);
    const DyadicInterval q0{static_cast<int>(rng.below(3)), 0};
    const LernerDecomposition dec = decompose(f, q0);
    const VerificationReport report = verify_decomposition(f, dec);
    CHECK_MESSAGE(report.passed(), (report.first_failure() ? report.first_failure()->detail : ""));
    CHECK(report.least_scaling <= 1.0 + 1e-12);
    CHECK(static_cast<int>(dec.generations.size()) <= 8 - q0.level + 1);
  }
}

TEST_CASE("mirrored inputs also verify") {
  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    const StepFunction f = random_integer_function(6, rng, 3);
    std::vector<double> mirrored(f.cells().rbegin(), f.cells().rend());
    const StepFunction g(6, std::move(mirrored));
    CHECK(verify_decomposition(g, decompose(g, DyadicInterval::root())).passed());
  }
}

TEST_CASE("tampering is detected") {
  Rng rng(43);
  int tried = 0;
  for (int t = 0; t < 200; ++t) {
    const StepFunction f = random_function(8, rng);
    const auto cubes = decompose(f, DyadicInterval::root()).cube_lists();
    if (cubes.size() < 2) continue;
    // Removing a generation-1 cube that has generation-2 cubes inside it
    // breaks the nesting of the sets Omega_k.
    for (std::size_t j = 0; j < cubes[0].size(); ++j) {
      const DyadicInterval q = cubes[0][j];
      if (std::none_of(cubes[1].begin(), cubes[1].end(),
                       [&](const DyadicInterval& c) { return q.contains(c); }))
        continue;
      auto broken = cubes;
      broken[0].erase(broken[0].begin() + static_cast<std::ptrdiff_t>(j));
      const VerificationReport report =
          verify_decomposition(f, LernerDecomposition::from_cubes(f, DyadicInterval::root(), broken));
      ++tried;
      REQUIRE(report.first_failure() != nullptr);
      CHECK(report.first_failure()->name == "nesting");
      break;
    }
  }
  CHECK(tried >= 10);

  // Here the local sharp maximal term alone already dominates, so deleting the
  // only stopping cube still verifies.
  const StepFunction spike(3, {16, 0, 0, 0, 0, 0, 0, 0});
  CHECK(verify_decomposition(spike, LernerDecomposition::from_cubes(spike, DyadicInterval::root(), {}))
            .passed());

  // A plateau that only the stopping-cube sum can cover.
  const StepFunction plateau(3, {4, 4, 4, 0, 0, 0, 0, 0});
  const LernerDecomposition full = decompose(plateau, DyadicInterval::root());
  CHECK(verify_decomposition(plateau, full).passed());

  const LernerDecomposition outside =
      LernerDecomposition::from_cubes(spike, DyadicInterval::root(), {{DyadicInterval{0, 0}}});
  CHECK(verify_decomposition(spike, outside).first_failure()->name == "cubes_inside_root");
  const LernerDecomposition overlap = LernerDecomposition::from_cubes(
      spike, DyadicInterval::root(), {{DyadicInterval{1, 0}, DyadicInterval{2, 0}}});
  CHECK(verify_decomposition(spike, overlap).first_failure()->name == "generation_disjointness");
  const LernerDecomposition heavy = LernerDecomposition::from_cubes(
      spike, DyadicInterval::root(), {{DyadicInterval{1, 0}}, {DyadicInterval{2, 0}, DyadicInterval{2, 1}}});
  CHECK(verify_decomposition(spike, heavy).first_failure()->name == "half_measure");
}

TEST_CASE("multi-generation decompositions occur and verify") {
  Rng rng(46);
  std::size_t deepest = 0;
  for (int t = 0; t < 100; ++t) {
    const StepFunction f = random_function(10, rng);
    const LernerDecomposition dec = decompose(f, DyadicInterval::root());
    deepest = std::max(deepest, dec.generations.size());
    CHECK(verify_decomposition(f, dec).passed());
  }
  CHECK(deepest >= 3);
}

TEST_CASE("decomposition json round trip") {
  Rng rng(44);
  const StepFunction f = random_function(6, rng);
  const LernerDecomposition dec = decompose(f, DyadicInterval::root());
  const LernerDecomposition back = decomposition_from_json(to_json(dec), f);
  CHECK(back.cube_lists() == dec.cube_lists());
  CHECK(verify_decomposition(f, back).passed());
}

TEST_CASE("shift domination") {
  const HaarShiftSpec hd4 = dyadic_hilbert_spec(4);
  const Domination flat = shift_domination(StepFunction::constant(4, 2), hd4, DyadicInterval::root());
  CHECK(flat.empirical_constant == 0);
  const Domination h = shift_domination(haar_function(DyadicInterval::root(), 4), hd4, DyadicInterval::root());
  CHECK(std::isfinite(h.empirical_constant));
  CHECK(h.empirical_constant > 0);

  Rng rng(45);
  double c6 = 0, c10 = 0;
  for (int t = 0; t < 50; ++t) {
    c6 = std::max(c6, shift_domination(random_function(6, rng), dyadic_hilbert_spec(6),
                                       DyadicInterval::root()).empirical_constant);
    c10 = std::max(c10, shift_domination(random_function(10, rng), dyadic_hilbert_spec(10),
                                         DyadicInterval::root()).empirical_constant);
  }
  CHECK(c10 <= 2 * c6);
  CHECK(c6 <= 2 * c10);
}
