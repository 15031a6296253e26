#include "dyadic/selftest.hpp"

#include <bit>
#include <chrono>
#include <limits>
#include <map>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "dyadic/error.hpp"
#include "dyadic/experiments.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/lerner.hpp"
#include "dyadic/petermichl.hpp"
#include "dyadic/random.hpp"
#include "dyadic/rearrangement.hpp"
#include "dyadic/reference.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/weighted.hpp"

namespace dyadic::selftest {
namespace {

class Suite {
 public:
  Suite(std::string module, std::string property)
      : start_(std::chrono::steady_clock::now()) {
    result_.module = std::move(module);
    result_.property = std::move(property);
  }

  bool ok() const { return result_.passed; }

  // Records the first violation only.
  void check(bool condition, const std::string& detail) {
    if (!condition && result_.passed) {
      result_.passed = false;
      result_.detail = detail;
    }
  }

  nlohmann::json& metrics() { return result_.metrics; }

  SuiteResult finish() {
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(result_);
  }

  // Runs body, turning an unexpected module error into a failure.
  template <class F>
  SuiteResult run(F&& body) {
    try {
      body();
    } catch (const Error& e) {
      check(false, std::string("unexpected error ") + e.what());
    }
    return finish();
  }

 private:
  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) { return format_number(v); }

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

double max_diff(const StepFunction& a, const StepFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

bool bitwise_equal(const StepFunction& a, const StepFunction& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

std::vector<DyadicInterval> all_intervals(int depth) {
  std::vector<DyadicInterval> out;
  for (int level = 0; level <= depth; ++level)
    for (std::int64_t i = 0; i < (std::int64_t{1} << level); ++i) out.push_back({level, i});
  return out;
}

StepFunction nonzero_function(int depth, Rng& rng) {
  for (;;) {
    StepFunction f = random_function(depth, rng);
    if (max_abs(f.cells()) > 0.0) return f;
  }
}

// depth 6: a tall spike over a plateau. Generation 1 is {[3,0]} and
// generation 2 is {[6,0]}.
StepFunction tamper_source() {
  std::vector<double> cells(64, 0.0);
  cells[0] = 100.0;
  for (int i = 1; i < 8; ++i) cells[i] = 1.0;
  return StepFunction(6, std::move(cells));
}

LernerDecomposition tampered_decomposition() {
  const StepFunction f = tamper_source();
  auto cubes = decompose(f, DyadicInterval::root()).cube_lists();
  // Drop the generation-1 cube, leaving its generation-2 child unparented.
  if (!cubes.empty()) cubes[0].clear();
  return LernerDecomposition::from_cubes(f, DyadicInterval::root(), cubes);
}

}  // namespace

SuiteResult interval_nesting(int max_depth) {
  Suite s("dyadic-core", "nested_or_disjoint");
  return s.run([&] {
    const auto all = all_intervals(max_depth);
    for (const auto& a : all) {
      for (const auto& b : all) {
        const bool inside = a.left() <= b.left() && b.right() <= a.right();
        const bool outside = b.left() <= a.left() && a.right() <= b.right();
        const bool apart = a.right() <= b.left() || b.right() <= a.left();
        s.check(inside || outside || apart,
                a.str() + " and " + b.str() + " overlap without nesting");
        const Relation r = relate(a, b);
        const Relation expected = inside && outside ? Relation::Equal
                                  : inside          ? Relation::Contains
                                  : outside         ? Relation::ContainedIn
                                                    : Relation::Disjoint;
        s.check(r == expected, "relate(" + a.str() + ", " + b.str() + ") disagrees with geometry");
      }
      if (a.level > 0) s.check(parent(a).contains(a), "parent of " + a.str() + " misses it");
    }
    Rng rng(7);
    const StepFunction f = random_function(max_depth, rng);
    for (const auto& a : all) {
      if (a.level == max_depth) continue;
      const double whole = average(f, a);
      const double halves = 0.5 * (average(f, a.left_child()) + average(f, a.right_child()));
      s.check(std::fabs(whole - halves) <= 1e-12 * std::max(1.0, max_abs(f.cells())),
              "average over " + a.str() + " is not the mean of its children's averages");
    }
    const StepFunction fine = refine(f, max_depth + 2);
    for (const auto& a : all)
      s.check(std::fabs(average(f, a) - average(fine, a)) <=
                  1e-12 * std::max(1.0, max_abs(f.cells())),
              "refine changed the average over " + a.str());
  });
}

SuiteResult haar_orthonormality(int depth) {
  Suite s("haar-shift", "orthonormality");
  return s.run([&] {
    const double err = reference::haar_gram_error(depth);
    s.metrics()["max_gram_error"] = err;
    s.metrics()["depth"] = depth;
    s.check(err <= 1e-10, "Gram matrix deviates from the identity by " + fmt(err));
  });
}

SuiteResult unweighted_norm(int min_depth, int max_depth) {
  Suite s("weighted", "unweighted_norm_oracle");
  return s.run([&] {
    nlohmann::json rows = nlohmann::json::array();
    for (int d = min_depth; d <= max_depth; ++d) {
      const HaarShiftSpec hd = dyadic_hilbert_spec(d);
      const StepFunction one = StepFunction::constant(d, 1.0);
      const double dense =
          weighted_operator_norm(hd, one, d, NormMethod::DenseSingularValue).value;
      const NormReport power = weighted_operator_norm(hd, one, d, NormMethod::PowerIteration);
      const double root2 = std::numbers::sqrt2;
      s.check(std::fabs(dense - root2) <= 1e-8,
              "dense norm " + fmt(dense) + " at depth " + std::to_string(d));
      s.check(std::fabs(power.value - root2) <= 1e-8,
              "matrix-free norm " + fmt(power.value) + " at depth " + std::to_string(d));
      s.check(std::fabs(dense - power.value) <= 1e-6 * dense,
              "dense and matrix-free norms disagree at depth " + std::to_string(d));
      rows.push_back({{"depth", d}, {"dense", dense}, {"power", power.value},
                      {"iterations", power.iterations}});
    }
    s.metrics()["norms"] = rows;
  });
}

SuiteResult rearrangement_inequalities(int functions, int depth, int brute_force_functions,
                                       std::uint64_t seed, const RearrangementChecks& checks) {
  const auto& upper_lambdas = checks.upper_lambdas;
  Suite s("rearrangement", "oscillation_inequalities");
  return s.run([&] {
    Rng rng(seed);
    const auto cubes = all_intervals(depth);
    std::size_t comparisons = 0;
    std::map<std::string, std::size_t> upper_violations;
    std::size_t median_violations = 0;
    for (int fi = 0; fi < functions; ++fi) {
      const StepFunction f = random_function(depth, rng);
      for (const DyadicInterval& q : cubes) {
        const auto values = f.cells_of(q);
        const double h = 1.0 / static_cast<double>(values.size());
        const double slack = 1e-12 * std::max(1.0, max_abs(values));
        const std::string where = " on " + q.str() + " of function " + std::to_string(fi);
        const MedianInterval med = median_interval_of(values);
        const double half = rearrangement_of(values, h, 0.5);
        std::vector<double> centred(values.size());
        for (double lambda : {0.125, 0.25, 0.5}) {
          const double omega = local_mean_oscillation_of(values, lambda).value;
          for (double m : {med.low, med.high}) {
            for (std::size_t i = 0; i < values.size(); ++i) centred[i] = values[i] - m;
            const double r = rearrangement_of(centred, h, lambda);
            s.check(omega <= r + slack, "omega exceeds the centred rearrangement" + where);
            if (r > 2 * omega + slack) {
              const std::string key = "lambda_" + fmt(lambda);
              ++upper_violations[key];
              if (std::find(upper_lambdas.begin(), upper_lambdas.end(), lambda) !=
                  upper_lambdas.end())
                s.check(false, "centred rearrangement exceeds 2 omega at lambda = " +
                                   fmt(lambda) + where);
            }
            ++comparisons;
          }
          const double plain = rearrangement_of(values, h, lambda);
          for (double p : {1.0, 2.0}) {
            double weak = 0.0, power_sum = 0.0;
            for (double v : values) {
              const double a = std::fabs(v);
              power_sum += std::pow(a, p);
              if (a == 0.0) continue;
              std::size_t at_least = 0;
              for (double u : values) at_least += std::fabs(u) >= a;
              weak = std::max(weak, a * std::pow(h * static_cast<double>(at_least), 1.0 / p));
            }
            const double strong = std::pow(h * power_sum, 1.0 / p);
            s.check(plain <= std::pow(lambda, -1.0 / p) * weak + slack,
                    "weak-type transfer fails for p = " + fmt(p) + where);
            s.check(plain <= std::pow(lambda, -1.0 / p) * strong + slack,
                    "strong-type transfer fails for p = " + fmt(p) + where);
            comparisons += 2;
          }
          if (fi < brute_force_functions) {
            const double brute = reference::oscillation(values, lambda);
            s.check(std::fabs(brute - omega) <= slack,
                    "omega " + fmt(omega) + " differs from brute force " + fmt(brute) + where);
          }
        }
        const bool literal = std::fabs(med.low) <= half + slack && std::fabs(med.high) <= half + slack;
        if (!literal) ++median_violations;
        if (checks.literal_median_bound || values.size() == 1) {
          s.check(literal, "median exceeds (f chi_Q)^*(|Q|/2)" + where);
        } else {
          const double left_limit =
              values.size() > 2 ? rearrangement_of(values, h, 0.5 - h) : max_abs(values);
          s.check(std::fabs(med.low) <= left_limit + slack &&
                      std::fabs(med.high) <= left_limit + slack,
                  "median exceeds (f chi_Q)^*(|Q|/2 - cell)" + where);
        }
        if (fi < brute_force_functions) {
          const MedianInterval brute = reference::median_interval(values);
          s.check(brute.low == med.low && brute.high == med.high,
                  "median interval differs from brute force" + where);
        }
      }
    }
    s.metrics()["comparisons"] = comparisons;
    s.metrics()["upper_bound_violations"] = upper_violations;
    s.metrics()["upper_bound_lambdas"] = upper_lambdas;
    s.metrics()["literal_median_bound_violations"] = median_violations;
  });
}

SuiteResult shift_identities(int depth, std::uint64_t seed) {
  Suite s("haar-shift", "shift_identities");
  return s.run([&] {
    Rng rng(seed);
    for (int tau : {0, 1, 2}) {
      const HaarShiftSpec spec = random_shift_spec(tau, depth, 0.5, 1.0, rng);
      const StepFunction f = random_function(depth, rng);
      const StepFunction g = random_function(depth, rng);
      const double scale = std::max({1.0, max_abs(f.cells()), max_abs(g.cells())});
      const std::string t = " for tau = " + std::to_string(tau);

      const StepFunction lhs = apply_shift(spec, axpby(2.5, f, -0.75, g));
      const StepFunction rhs = axpby(2.5, apply_shift(spec, f), -0.75, apply_shift(spec, g));
      s.check(max_diff(lhs, rhs) <= 1e-12 * 8 * scale, "linearity fails" + t);

      const TruncationPolicy coarse = TruncationPolicy::for_spec(spec, depth);
      const StepFunction fine =
          apply_shift(spec, refine(f, depth + 1), {depth + 1, coarse.max_level});
      s.check(max_diff(refine(apply_shift(spec, f), depth + 1), fine) <= 1e-12 * 8 * scale,
              "truncation at depth and depth + 1 disagree" + t);

      const Eigen::MatrixXd m = assemble_matrix(spec, depth);
      const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(f.cells().data(), f.size());
      const Eigen::VectorXd y = m * x;
      const StepFunction hf = apply_shift(spec, f);
      for (std::size_t i = 0; i < f.size(); ++i)
        s.check(std::fabs(y[i] - hf[i]) <= 1e-12 * 8 * scale * std::sqrt(f.size()),
                "assembled matrix disagrees with apply_shift" + t);

      const StepFunction adj = apply_shift(adjoint_spec(spec), g);
      const double a = integral(multiply(hf, g));
      const double b = integral(multiply(f, adj));
      s.check(std::fabs(a - b) <= 1e-10 * scale * scale, "adjoint identity fails" + t);

      const CompiledShift op = compile_shift(spec, coarse);
      s.check(bitwise_equal(apply_compiled(op, f), serial::apply_compiled(op, f)),
              "parallel and serial application differ" + t);
    }
  });
}

SuiteResult lerner_decomposition(int functions, int depth, std::uint64_t seed) {
  Suite s("lerner", "decomposition_properties");
  return s.run([&] {
    Rng rng(seed);
    std::vector<StepFunction> cases;
    cases.push_back(StepFunction::indicator(depth, {depth, 0}));
    for (int i = 0; i < functions; ++i) cases.push_back(random_function(depth, rng));
    double worst = 0.0;
    std::size_t cubes = 0;
    for (std::size_t c = 0; c < cases.size() && s.ok(); ++c) {
      const LernerDecomposition dec = decompose(cases[c], DyadicInterval::root());
      const VerificationReport report = verify_decomposition(cases[c], dec);
      cubes += dec.cube_count();
      worst = std::max(worst, report.least_scaling);
      if (const PropertyCheck* bad = report.first_failure())
        s.check(false, bad->name + ": " + bad->detail + " (function " + std::to_string(c) + ")");
    }
    s.metrics()["instances"] = cases.size();
    s.metrics()["stopping_cubes"] = cubes;
    s.metrics()["least_scaling"] = worst;
  });
}

SuiteResult lerner_tampered_fixture() {
  Suite s("lerner", "tampered_fixture");
  return s.run([&] {
    const VerificationReport report = verify_decomposition(tamper_source(), tampered_decomposition());
    if (const PropertyCheck* bad = report.first_failure())
      s.check(false, bad->name + ": " + bad->detail);
  });
}

SuiteResult lerner_rejects_tampering() {
  Suite s("lerner", "verifier_rejects_tampering");
  return s.run([&] {
    const StepFunction f = tamper_source();
    const auto cubes = decompose(f, DyadicInterval::root()).cube_lists();
    s.check(cubes.size() >= 2 && cubes[0] == std::vector<DyadicInterval>{{3, 0}} &&
                cubes[1] == std::vector<DyadicInterval>{{6, 0}},
            "fixture no longer produces generations {[3,0]}, {[6,0]}");
    const VerificationReport report = verify_decomposition(f, tampered_decomposition());
    const PropertyCheck* bad = report.first_failure();
    s.check(bad != nullptr && bad->name == "nesting",
            "verifier did not report the nesting violation");
  });
}

SuiteResult far_part_constancy(int specs, int functions, int depth, std::uint64_t seed) {
  Suite s("haar-shift", "far_part_constancy");
  return s.run([&] {
    Rng rng(seed);
    const auto cubes = all_intervals(depth);
    double worst = 0.0;
    for (int tau : {0, 1, 2}) {
      for (int si = 0; si < specs; ++si) {
        const HaarShiftSpec spec = random_shift_spec(tau, depth, 0.5, 1.0, rng);
        const CompiledShift op = compile_shift(spec, TruncationPolicy::for_spec(spec, depth));
        for (int fi = 0; fi < functions; ++fi) {
          const StepFunction f = random_function(depth, rng);
          for (const DyadicInterval& q0 : cubes) {
            const double spread = far_part_spread(op, tau, f, q0);
            worst = std::max(worst, spread);
            s.check(spread <= 1e-12, "spread " + fmt(spread) + " on " + q0.str() +
                                         " for tau = " + std::to_string(tau));
          }
        }
      }
    }
    s.metrics()["max_spread"] = worst;
  });
}

namespace {

// max over specs, functions and every Q0 of omega_{1/8}(Hf, Q0) / avg_{Q0^tau}|f|.
double oscillation_sup(int tau, int specs, int functions, int depth, Rng& rng) {
  double best = 0.0;
  for (int si = 0; si < specs; ++si) {
    const HaarShiftSpec spec = random_shift_spec(tau, depth, 0.5, 1.0, rng);
    const CompiledShift op = compile_shift(spec, TruncationPolicy::for_spec(spec, depth));
    for (int fi = 0; fi < functions; ++fi) {
      const StepFunction f = nonzero_function(depth, rng);
      const StepFunction g = apply_compiled(op, f);
      const LevelSums sums(abs(f));
      for (int level = 0; level <= depth; ++level) {
        for (std::int64_t i = 0; i < (std::int64_t{1} << level); ++i) {
          const DyadicInterval q0{level, i};
          const DyadicInterval big = ancestor(q0, tau, tau);
          const double avg =
              big.level >= 0 ? sums.sum(big) / static_cast<double>(f.size() >> big.level)
                             : sums.sum(DyadicInterval::root()) / static_cast<double>(f.size()) /
                                   big.length();
          const double osc = local_mean_oscillation(g, q0, kOscillationLambda).value;
          if (avg > 0.0)
            best = std::max(best, osc / avg);
          else if (osc > 0.0)
            return std::numeric_limits<double>::infinity();
        }
      }
    }
  }
  return best;
}

}  // namespace

SuiteResult oscillation_constant(int specs, int functions, int small_depth, int large_depth,
                                 std::uint64_t seed) {
  Suite s("haar-shift", "oscillation_constant");
  return s.run([&] {
    for (int tau : {0, 1, 2}) {
      Rng small_rng(derive_seed(seed, 2 * tau));
      Rng large_rng(derive_seed(seed, 2 * tau + 1));
      const double c_small = oscillation_sup(tau, specs, functions, small_depth, small_rng);
      const double c_large = oscillation_sup(tau, specs, functions, large_depth, large_rng);
      s.metrics()["tau_" + std::to_string(tau)] = {{"small_depth", c_small},
                                                   {"large_depth", c_large}};
      const std::string t = " for tau = " + std::to_string(tau);
      s.check(std::isfinite(c_small) && std::isfinite(c_large), "constant is not finite" + t);
      s.check(c_large <= 2 * c_small && c_small <= 2 * c_large,
              "constants " + fmt(c_small) + " and " + fmt(c_large) + " differ by more than 2x" + t);
    }
  });
}

SuiteResult domination_constant(int functions, int small_depth, int large_depth,
                                std::uint64_t seed) {
  Suite s("lerner", "domination_constant");
  return s.run([&] {
    double constants[2] = {0.0, 0.0};
    const int depths[2] = {small_depth, large_depth};
    for (int k = 0; k < 2; ++k) {
      Rng rng(derive_seed(seed, k));
      const HaarShiftSpec hd = dyadic_hilbert_spec(depths[k]);
      for (int fi = 0; fi < functions; ++fi) {
        const StepFunction f = nonzero_function(depths[k], rng);
        try {
          constants[k] = std::max(constants[k],
                                  shift_domination(f, hd, DyadicInterval::root()).empirical_constant);
        } catch (const Error& e) {
          s.check(false, std::string(e.what()) + " at depth " + std::to_string(depths[k]));
        }
      }
    }
    s.metrics()["small_depth"] = constants[0];
    s.metrics()["large_depth"] = constants[1];
    s.check(std::isfinite(constants[0]) && std::isfinite(constants[1]), "constant not finite");
    s.check(constants[1] <= 2 * constants[0] && constants[0] <= 2 * constants[1],
            "constants " + fmt(constants[0]) + " and " + fmt(constants[1]) +
                " differ by more than 2x");
  });
}

SuiteResult weighted_maximal_bound(int pairs, int depth, std::uint64_t seed) {
  Suite s("weighted", "weighted_maximal_bound");
  return s.run([&] {
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < pairs; ++k) {
      const StepFunction sigma = random_weight(depth, rng);
      const StepFunction f = nonzero_function(depth, rng);
      const StepFunction m = weighted_dyadic_maximal(f, sigma);
      const double ratio = weighted_lp_norm(m, sigma, 2.0) / weighted_lp_norm(f, sigma, 2.0);
      worst = std::max(worst, ratio);
      s.check(ratio <= 2.0 + 1e-9, "ratio " + fmt(ratio) + " for pair " + std::to_string(k));
      if (k < 8) {
        s.check(bitwise_equal(m, serial::weighted_dyadic_maximal(f, sigma)),
                "parallel and serial weighted maximal functions differ");
        const StepFunction brute = reference::weighted_dyadic_maximal(f, sigma);
        s.check(max_diff(m, brute) <= 1e-12 * std::max(1.0, max_abs(brute.cells())),
                "weighted maximal function differs from direct evaluation");
      }
    }
    s.metrics()["max_ratio"] = worst;
  });
}

SuiteResult weight_constants(std::uint64_t seed) {
  Suite s("weighted", "weight_constants");
  return s.run([&] {
    Rng rng(seed);
    for (int d = 1; d <= 6; ++d) {
      const double flat = ap_constant(StepFunction::constant(d, 3.0), 2.0).constant;
      s.check(std::fabs(flat - 1.0) <= 1e-15, "constant weight has A2 " + fmt(flat));
      for (int k = 0; k < 10; ++k) {
        const StepFunction w = random_weight(d, rng);
        for (double p : {1.5, 2.0, 3.0}) {
          const double a = ap_constant(w, p).constant;
          const double b = reference::ap_constant(w, p);
          s.check(a >= 1.0 - 1e-12, "A_p below 1");
          s.check(std::fabs(a - b) <= 1e-12 * b, "A_p differs from direct evaluation");
        }
      }
    }
    const StepFunction w = power_weight(0.5, 8);
    const HaarShiftSpec hd = dyadic_hilbert_spec(8);
    const double dense = weighted_operator_norm(hd, w, 8, NormMethod::DenseSingularValue).value;
    const double power = weighted_operator_norm(hd, w, 8, NormMethod::PowerIteration).value;
    s.metrics()["sqrt_weight_norm"] = dense;
    s.check(std::fabs(dense - power) <= 1e-6 * dense, "dense and matrix-free norms disagree");
    StepFunction scaled = axpby(7.0, w, 0.0, w);
    const double again = weighted_operator_norm(hd, scaled, 8, NormMethod::DenseSingularValue).value;
    s.check(std::fabs(again - dense) <= 1e-12 * dense, "norm is not scale invariant");
    const double lb = maximal_weighted_norm_lb(w, 4, seed);
    s.check(lb >= 1.0, "maximal lower estimate below 1");
  });
}

SuiteResult sweep_determinism(int depth, std::uint64_t seed) {
  Suite s("cli", "sweep_determinism");
  return s.run([&] {
    SweepOptions options;
    options.alphas = {0.0, 0.5, 0.9};
    options.depth = depth;
    options.seed = seed;
    options.crosscheck_depth = std::min(depth, 6);
    options.maximal_trials = 4;
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const SweepResult one = run_sweep(options);
    omp_set_num_threads(4);
    const SweepResult four = run_sweep(options);
    omp_set_num_threads(saved);
    s.check(sweep_csv(one) == sweep_csv(four), "CSV differs between 1 and 4 threads");
    const SweepRow& flat = one.rows.front();
    s.check(!flat.error && *flat.a2_constant == 1.0 &&
                std::fabs(*flat.op_norm - std::numbers::sqrt2) <= 1e-8,
            "alpha = 0 row is not (1, sqrt 2)");
    for (const SweepRow& r : one.rows)
      s.check(!r.error, "row alpha = " + fmt(r.alpha) + " failed with " + r.error.value_or(""));
  });
}

SuiteResult grid_averaging_identity(int depth) {
  Suite s("haar-shift", "grid_averaging_identity");
  return s.run([&] {
    Rng rng(11);
    const StepFunction f = random_function(depth, rng);
    const StepFunction plain = apply_shift(dyadic_hilbert_spec(depth), f);
    const StepFunction single = petermichl_average(f, 1, 1, 5, {0, 0, false});
    s.check(max_diff(plain, single) <= 1e-12 * std::max(1.0, max_abs(plain.cells())),
            "identity grid does not reproduce H^d");
    const double target = hilbert_of_indicator(0.0, 1.0, 2.0);
    s.check(std::fabs(target - std::log(2.0) / std::numbers::pi) <= 1e-15,
            "closed form at x = 2 is " + fmt(target));
  });
}

bool Report::passed() const {
  for (const SuiteResult& r : suites)
    if (!r.passed) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const SuiteResult& r : suites)
    out.push_back({{"module", r.module},
                   {"property", r.property},
                   {"passed", r.passed},
                   {"detail", r.detail},
                   {"seconds", r.seconds},
                   {"metrics", r.metrics}});
  return {{"passed", passed()}, {"suites", out}};
}

Report run(const Options& options) {
  const std::uint64_t seed = options.seed;
  Report report;
  auto add = [&](SuiteResult r) { report.suites.push_back(std::move(r)); };
  add(interval_nesting(6));
  add(rearrangement_inequalities(40, 6, 4, derive_seed(seed, 1)));
  add(haar_orthonormality(8));
  add(shift_identities(7, derive_seed(seed, 2)));
  add(far_part_constancy(4, 4, 6, derive_seed(seed, 3)));
  add(oscillation_constant(4, 4, 6, 10, derive_seed(seed, 4)));
  add(grid_averaging_identity(6));
  add(lerner_decomposition(20, 8, derive_seed(seed, 5)));
  add(lerner_rejects_tampering());
  if (options.inject_tampered) add(lerner_tampered_fixture());
  add(domination_constant(20, 6, 10, derive_seed(seed, 6)));
  add(unweighted_norm(4, 8));
  add(weighted_maximal_bound(100, 8, derive_seed(seed, 7)));
  add(weight_constants(derive_seed(seed, 8)));
  add(sweep_determinism(6, derive_seed(seed, 9)));
  return report;
}

}  // namespace dyadic::selftest
