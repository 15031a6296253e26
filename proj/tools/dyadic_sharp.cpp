#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "dyadic/error.hpp"
#include "dyadic/experiments.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/lerner.hpp"
#include "dyadic/random.hpp"
#include "dyadic/selftest.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/weighted.hpp"

namespace {

using namespace dyadic;

struct Globals {
  std::uint64_t seed = 1;
  std::optional<int> depth;
  std::string out;
  std::string format;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_text_file(g.out, text);
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

std::string function_csv(const StepFunction& f) {
  std::ostringstream out;
  out << "cell,left,value\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << i << ',' << format_number(static_cast<double>(i) * f.cell_width()) << ','
        << format_number(f[i]) << '\n';
  return out.str();
}

void emit_function(const Globals& g, const StepFunction& f) {
  if (g.format == "csv")
    emit(g, function_csv(f));
  else
    emit_json(g, to_json(f));
}

void require_json(const Globals& g, const char* command) {
  if (g.format == "csv")
    fail(Errc::InvalidArgument, std::string(command) + " only supports --format json");
}

int depth_or(const Globals& g, int fallback) { return g.depth.value_or(fallback); }

HaarShiftSpec load_spec(const std::string& name, int depth) {
  if (name == "hd") return dyadic_hilbert_spec(depth);
  return shift_spec_from_json(read_json_file(name));
}

StepFunction load_function(const std::string& path, const Globals& g, int fallback_depth) {
  if (!path.empty()) return step_function_from_json(read_json_file(path));
  Rng rng(g.seed);
  return random_function(depth_or(g, fallback_depth), rng);
}

StepFunction load_weight(const std::string& path, std::optional<double> alpha, const Globals& g,
                         int fallback_depth) {
  if (!path.empty()) return weight_from_json(read_json_file(path));
  return power_weight(alpha.value_or(0.0), depth_or(g, fallback_depth));
}

void apply_thread_limit() {
  if (const char* env = std::getenv("DYADIC_SHARP_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1)
      fail(Errc::InvalidArgument, std::string("DYADIC_SHARP_THREADS must be a positive integer, got '") +
                                      env + "'");
    omp_set_num_threads(static_cast<int>(n));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic harmonic analysis toolkit: Haar shifts, weights, Lerner decompositions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed for every random choice");
  app.add_option("--depth", g.depth, "Grid depth D (2^D cells)")->check(CLI::Range(1, 30));
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  // gen-weight
  std::string weight_kind = "power";
  double weight_alpha = 0.5;
  auto* gen = app.add_subcommand("gen-weight", "Generate a weight on the depth grid");
  gen->add_option("--kind", weight_kind, "power, random or constant")
      ->check(CLI::IsMember({"power", "random", "constant"}));
  gen->add_option("--alpha", weight_alpha, "Exponent of the power weight x^alpha");

  // a2
  std::string weight_file;
  std::optional<double> alpha;
  double p = 2.0;
  auto* a2 = app.add_subcommand("a2", "Dyadic A_p constant of a weight");
  a2->add_option("--weight", weight_file, "Weight JSON file")->check(CLI::ExistingFile);
  a2->add_option("--alpha", alpha, "Use the power weight x^alpha instead of a file");
  a2->add_option("--p", p, "Exponent p > 1");

  // shift-apply
  std::string spec_name = "hd";
  std::string function_file;
  auto* shift = app.add_subcommand("shift-apply", "Apply a Haar shift to a step function");
  shift->add_option("--spec", spec_name, "'hd' or a shift spec JSON file");
  shift->add_option("--function", function_file, "Step function JSON file (random if absent)")
      ->check(CLI::ExistingFile);

  // norm
  std::string method = "power";
  auto* norm = app.add_subcommand("norm", "Weighted L^2 operator norm of a Haar shift");
  norm->add_option("--spec", spec_name, "'hd' or a shift spec JSON file");
  norm->add_option("--weight", weight_file, "Weight JSON file")->check(CLI::ExistingFile);
  norm->add_option("--alpha", alpha, "Use the power weight x^alpha instead of a file");
  norm->add_option("--method", method, "dense or power")->check(CLI::IsMember({"dense", "power"}));

  // lerner-verify
  std::string decomposition_file;
  auto* lerner = app.add_subcommand("lerner-verify", "Build or load a Lerner decomposition and verify it");
  lerner->add_option("--function", function_file, "Step function JSON file (random if absent)")
      ->check(CLI::ExistingFile);
  lerner->add_option("--decomposition", decomposition_file, "Decomposition JSON to verify")
      ->check(CLI::ExistingFile);

  // domination
  auto* domination = app.add_subcommand("domination", "Pointwise domination constant of a Haar shift");
  domination->add_option("--spec", spec_name, "'hd' or a shift spec JSON file");
  domination->add_option("--function", function_file, "Step function JSON file (random if absent)")
      ->check(CLI::ExistingFile);

  // sweep
  SweepOptions sweep_options;
  double lp_p = 3.0;
  auto* sweep = app.add_subcommand("sweep", "Power-weight sweep of norms against A_2");
  sweep->add_option("--alphas", sweep_options.alphas, "Exponents in (-1, 1)")->delimiter(',');
  sweep->add_option("--lp-p", lp_p, "Exponent of the L^p probe; 0 disables it");
  sweep->add_option("--crosscheck-depth", sweep_options.crosscheck_depth,
                    "Depth of the dense cross-check; 0 disables it");
  sweep->add_option("--maximal-trials", sweep_options.maximal_trials,
                    "Random test functions for the maximal operator estimate")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--record-timing", sweep_options.record_timing,
                  "Fill runtime_ms (makes the output run-dependent)");

  // lp-probe
  double probe_alpha = 0.5;
  double probe_p = 3.0;
  auto* lp = app.add_subcommand("lp-probe", "L^p lower-bound probe for H^d under a power weight");
  lp->add_option("--alpha", probe_alpha, "Exponent of the power weight");
  lp->add_option("--p", probe_p, "Exponent p > 1");

  // hilbert-compare
  double a = 0.25, b = 0.75;
  int shifts = 64, dilations = 4;
  auto* hilbert = app.add_subcommand("hilbert-compare",
                                     "Compare grid-averaged H^d with the Hilbert transform");
  hilbert->add_option("--a", a, "Left end of the indicator");
  hilbert->add_option("--b", b, "Right end of the indicator");
  hilbert->add_option("--shifts", shifts, "Translations S")->check(CLI::PositiveNumber);
  hilbert->add_option("--dilations", dilations, "Dilations T")->check(CLI::PositiveNumber);

  // selftest
  bool inject = false;
  auto* self = app.add_subcommand("selftest", "Run every module's invariant suites");
  self->add_flag("--inject-tampered", inject, "Verify a corrupted decomposition as genuine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    apply_thread_limit();
    if (*gen) {
      const int d = depth_or(g, 10);
      StepFunction w = StepFunction::constant(d, 1.0);
      if (weight_kind == "power") {
        w = power_weight(weight_alpha, d);
      } else if (weight_kind == "random") {
        Rng rng(g.seed);
        w = random_weight(d, rng);
      }
      emit_function(g, w);
    } else if (*a2) {
      require_json(g, "a2");
      if (!(p > 1.0)) fail(Errc::BadExponent, "p must be > 1");
      emit_json(g, to_json(ap_constant(load_weight(weight_file, alpha, g, 10), p)));
    } else if (*shift) {
      const StepFunction f = load_function(function_file, g, 10);
      emit_function(g, apply_shift(load_spec(spec_name, f.depth()), f));
    } else if (*norm) {
      require_json(g, "norm");
      const StepFunction w = load_weight(weight_file, alpha, g, 10);
      const NormMethod m = method == "dense" ? NormMethod::DenseSingularValue
                                             : NormMethod::PowerIteration;
      PowerIterationOptions options;
      options.seed = g.seed;
      emit_json(g, to_json(weighted_operator_norm(load_spec(spec_name, w.depth()), w, w.depth(),
                                                  m, options)));
    } else if (*lerner) {
      require_json(g, "lerner-verify");
      const StepFunction f = load_function(function_file, g, 8);
      const LernerDecomposition dec =
          decomposition_file.empty()
              ? decompose(f, DyadicInterval::root())
              : decomposition_from_json(read_json_file(decomposition_file), f);
      const VerificationReport report = verify_decomposition(f, dec);
      emit_json(g, {{"decomposition", to_json(dec)}, {"verification", to_json(report)}});
      if (const PropertyCheck* bad = report.first_failure()) {
        std::cerr << "verification failed: " << bad->name << ": " << bad->detail << '\n';
        return 2;
      }
    } else if (*domination) {
      require_json(g, "domination");
      const StepFunction f = load_function(function_file, g, 8);
      const Domination d =
          shift_domination(f, load_spec(spec_name, f.depth()), DyadicInterval::root());
      emit_json(g, {{"empirical_constant", d.empirical_constant},
                    {"mf_part", to_json(d.mf_part)},
                    {"F_part", to_json(d.F_part)},
                    {"decomposition", to_json(d.decomposition)}});
    } else if (*sweep) {
      sweep_options.depth = depth_or(g, 12);
      sweep_options.seed = g.seed;
      if (lp_p == 0.0)
        sweep_options.lp_p.reset();
      else
        sweep_options.lp_p = lp_p;
      if (sweep_options.lp_p && !(*sweep_options.lp_p > 1.0))
        fail(Errc::BadExponent, "--lp-p must be > 1 or 0");
      const SweepResult result = run_sweep(sweep_options);
      if (g.format == "json") {
        emit_json(g, sweep_json(result));
      } else {
        emit(g, sweep_csv(result));
        std::cerr << "slope "
                  << (result.slope ? format_number(*result.slope) : std::string("n/a")) << '\n';
      }
    } else if (*lp) {
      require_json(g, "lp-probe");
      const LpProbe probe = lp_lower_probe(probe_alpha, probe_p, depth_or(g, 12));
      emit_json(g, {{"alpha", probe_alpha},
                    {"p", probe.p},
                    {"lower_ratio", probe.lower_ratio},
                    {"ap_constant", probe.ap_constant}});
    } else if (*hilbert) {
      require_json(g, "hilbert-compare");
      emit_json(g, to_json(hilbert_compare(a, b, shifts, dilations, depth_or(g, 8), g.seed)));
    } else if (*self) {
      const selftest::Report report = selftest::run({g.seed, inject});
      if (g.format == "json") {
        emit_json(g, report.to_json());
      } else {
        std::ostringstream out;
        for (const auto& s : report.suites)
          out << (s.passed ? "PASS " : "FAIL ") << s.module << '/' << s.property << " ("
              << format_number(s.seconds) << " s)" << (s.passed ? "" : ": " + s.detail) << '\n';
        emit(g, out.str());
      }
      for (const auto& s : report.suites)
        if (!s.passed) std::cerr << "failed: " << s.module << '/' << s.property << ": " << s.detail << '\n';
      return report.passed() ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return is_computation_error(e.code()) ? 2 : 1;
  }
  return 0;
}
