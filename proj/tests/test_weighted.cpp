#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dyadic/error.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/random.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/weighted.hpp"

using namespace dyadic;

namespace {

std::vector<double> values(const StepFunction& f) { return {f.cells().begin(), f.cells().end()}; }

// Direct enumeration of every dyadic interval.
double ap_direct(const StepFunction& w, double p) {
  double best = 0;
  for (int l = 0; l <= w.depth(); ++l)
    for (std::int64_t i = 0; i < (std::int64_t{1} << l); ++i) {
      double a = 0, b = 0;
      const auto cells = w.cells_of({l, i});
      for (double v : cells) {
        a += v;
        b += std::pow(v, -1 / (p - 1));
      }
      a /= cells.size();
      b /= cells.size();
      best = std::max(best, a * std::pow(b, p - 1));
    }
  return best;
}

std::vector<double> maximal_direct(const StepFunction& f, const StepFunction& s) {
  std::vector<double> out(f.size(), 0);
  for (int l = 0; l <= f.depth(); ++l)
    for (std::int64_t i = 0; i < (std::int64_t{1} << l); ++i) {
      const auto fc = f.cells_of({l, i});
      const auto sc = s.cells_of({l, i});
      double num = 0, den = 0;
      for (std::size_t k = 0; k < fc.size(); ++k) {
        num += std::fabs(fc[k]) * sc[k];
        den += sc[k];
      }
      const std::size_t lo = static_cast<std::size_t>(i) * fc.size();
      for (std::size_t k = 0; k < fc.size(); ++k) out[lo + k] = std::max(out[lo + k], num / den);
    }
  return out;
}

}  // namespace

TEST_CASE("A_p examples") {
  const ApReport one = ap_constant(StepFunction::constant(4, 1), 3);
  CHECK(one.constant == 1);
  CHECK(one.witness == DyadicInterval::root());
  const ApReport r = ap_constant(StepFunction(1, {1, 4}), 2);
  CHECK(r.constant == doctest::Approx(1.5625).epsilon(1e-15));
  CHECK(r.witness == DyadicInterval::root());
  CHECK(ap_product(StepFunction(1, {1, 4}), 2, r.witness) == r.constant);
  CHECK_THROWS_AS(ap_constant(StepFunction(1, {1, 0}), 2), Error);
  CHECK_THROWS_AS(ap_constant(StepFunction(1, {1, 2}), 1), Error);

  Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    const int depth = static_cast<int>(rng.below(7));
    const StepFunction w = random_weight(depth, rng);
    for (double p : {1.5, 2.0, 4.0}) {
      const ApReport a = ap_constant(w, p);
      CHECK(a.constant >= 1.0 - 1e-12);
      CHECK(a.constant == doctest::Approx(ap_direct(w, p)).epsilon(1e-12));
      CHECK(ap_product(w, p, a.witness) == doctest::Approx(a.constant).epsilon(1e-14));
      CHECK(ap_constant(refine(w, depth + 2), p).constant == doctest::Approx(a.constant).epsilon(1e-12));
    }
  }
}

TEST_CASE("power weights") {
  const StepFunction flat = power_weight(0, 6);
  for (double v : flat.cells()) CHECK(v == 1);
  const StepFunction w = power_weight(0.5, 1);
  CHECK(w[0] == doctest::Approx(std::pow(0.5, 1.5) / 1.5 / 0.5).epsilon(1e-14));
  CHECK(w[0] == doctest::Approx(0.4714).epsilon(1e-4));
  CHECK(w[1] == doctest::Approx((1 - std::pow(0.5, 1.5)) / 1.5 / 0.5).epsilon(1e-14));
  CHECK(integral(power_weight(-0.75, 10)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(power_weight(1.0, 4), Error);
  CHECK_THROWS_AS(power_weight(-1.0, 4), Error);
  double previous = 0;
  for (double alpha : {0.0, 0.5, 0.75, 0.875}) {
    const double a = ap_constant(power_weight(alpha, 8), 2).constant;
    CHECK(a > previous);
    previous = a;
  }
  for (int d = 2; d < 10; ++d)
    CHECK(ap_constant(power_weight(0.9, d + 1), 2).constant >= ap_constant(power_weight(0.9, d), 2).constant);
}

TEST_CASE("dyadic maximal") {
  const StepFunction f(2, {1, 0, 0, 0});
  const StepFunction m = dyadic_maximal(f);
  CHECK(values(m) == std::vector<double>{1, 0.5, 0.25, 0.25});
  const StepFunction constant_max = dyadic_maximal(StepFunction::constant(3, -2));
  for (double v : constant_max.cells()) CHECK(v == 2);
  const StepFunction s = weighted_dyadic_maximal(f, StepFunction(2, {3, 1, 1, 1}));
  CHECK(s[0] == 1);
  CHECK(s[1] == 0.75);
  CHECK(s[2] == 0.5);
  CHECK(s[3] == 0.5);
  CHECK_THROWS_AS(weighted_dyadic_maximal(f, StepFunction(2, {1, 0, 1, 1})), Error);

  Rng rng(52);
  for (int t = 0; t < 50; ++t) {
    const StepFunction g = random_function(7, rng);
    const StepFunction sigma = random_weight(7, rng);
    const StepFunction mg = dyadic_maximal(g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(mg[i] >= std::fabs(g[i]));
    CHECK(values(mg) == values(weighted_dyadic_maximal(g, StepFunction::constant(7, 1))));
    CHECK(values(mg) == values(serial::dyadic_maximal(g)));
    const StepFunction ms = weighted_dyadic_maximal(g, sigma);
    CHECK(values(ms) == values(serial::weighted_dyadic_maximal(g, sigma)));
    const auto direct = maximal_direct(g, sigma);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(ms[i] == doctest::Approx(direct[i]).epsilon(1e-12));
  }
}

TEST_CASE("weighted maximal bound on L^2(sigma)") {
  Rng rng(53);
  for (int t = 0; t < 500; ++t) {
    const int depth = 1 + static_cast<int>(rng.below(8));
    const StepFunction sigma = random_weight(depth, rng);
    StepFunction f = random_function(depth, rng);
    if (weighted_lp_norm(f, sigma, 2) == 0) continue;
    const double ratio =
        weighted_lp_norm(weighted_dyadic_maximal(f, sigma), sigma, 2) / weighted_lp_norm(f, sigma, 2);
    CHECK(ratio <= 2 + 1e-9);
  }
}

TEST_CASE("weighted operator norm") {
  const double r2 = std::numbers::sqrt2;
  for (int d = 4; d <= 10; ++d) {
    const StepFunction one = StepFunction::constant(d, 1);
    const HaarShiftSpec hd = dyadic_hilbert_spec(d);
    const NormReport dense = weighted_operator_norm(hd, one, d, NormMethod::DenseSingularValue);
    const NormReport power = weighted_operator_norm(hd, one, d, NormMethod::PowerIteration);
    CHECK(std::fabs(dense.value - r2) <= 1e-8);
    CHECK(std::fabs(power.value - r2) <= 1e-8);
    CHECK(dense.method == NormMethod::DenseSingularValue);
    CHECK(power.iterations >= 1);
  }
  const StepFunction w = power_weight(0.5, 8);
  const HaarShiftSpec hd = dyadic_hilbert_spec(8);
  const double dense = weighted_operator_norm(hd, w, 8, NormMethod::DenseSingularValue).value;
  const double power = weighted_operator_norm(hd, w, 8, NormMethod::PowerIteration).value;
  CHECK(std::fabs(dense - power) <= 1e-6 * dense);
  const double scaled =
      weighted_operator_norm(hd, axpby(5, w, 0, w), 8, NormMethod::DenseSingularValue).value;
  CHECK(scaled == doctest::Approx(dense).epsilon(1e-12));
  CHECK_THROWS_AS(weighted_operator_norm(hd, w, 7, NormMethod::PowerIteration), Error);
  CHECK_THROWS_AS(weighted_operator_norm(dyadic_hilbert_spec(13), StepFunction::constant(13, 1), 13,
                                         NormMethod::DenseSingularValue),
                  Error);
  Rng rng(54);
  const StepFunction rw = random_weight(6, rng);
  const HaarShiftSpec spec = random_shift_spec(2, 6, 0.5, 1.0, rng);
  CHECK(weighted_operator_norm(spec, rw, 6, NormMethod::PowerIteration).value ==
        doctest::Approx(weighted_operator_norm(spec, rw, 6, NormMethod::DenseSingularValue).value).epsilon(1e-6));
}

TEST_CASE("maximal lower estimate") {
  Rng rng(55);
  const StepFunction w = random_weight(6, rng);
  const double lb = maximal_weighted_norm_lb(w, 8, 3);
  CHECK(lb >= 1.0);
  CHECK(lb == maximal_weighted_norm_lb(w, 8, 3));
  const double flat = maximal_weighted_norm_lb(StepFunction::constant(8, 1), 8, 3);
  CHECK(std::isfinite(flat));
  CHECK(flat <= 2.0);
}

TEST_CASE("report json") {
  const json a = to_json(ap_constant(StepFunction(1, {1, 4}), 2));
  CHECK(a["witness"] == json::array({0, 0}));
  CHECK(a["constant"].get<double>() == doctest::Approx(1.5625));
  const json n = to_json(weighted_operator_norm(dyadic_hilbert_spec(4), StepFunction::constant(4, 1), 4,
                                                NormMethod::PowerIteration));
  CHECK(n.contains("iterations"));
  CHECK(n.contains("residual"));
  CHECK(n["method"] == "power-iteration");
}
