#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyadic/petermichl.hpp"
#include "dyadic/weighted.hpp"

namespace dyadic {

struct LpProbe {
  double p = 2.0;
  double lower_ratio = 0.0;
  double ap_constant = 1.0;
};

// ||H^d f||_{L^p(w)} / ||f||_{L^p(w)} for f = w^{1-p'} on [0, 2^{2-depth}),
// with w the power weight x^alpha. A lower bound for the operator norm.
LpProbe lp_lower_probe(double alpha, double p, int depth);

struct SweepRow {
  double alpha = 0.0;
  int depth = 0;
  std::optional<double> a2_constant;
  std::optional<double> op_norm;
  std::optional<double> ratio;
  std::optional<double> maximal_lb;
  std::optional<LpProbe> lp_probe;
  std::optional<std::int64_t> runtime_ms;
  // Dense-vs-matrix-free relative difference at the cross-check depth.
  std::optional<double> crosscheck_difference;
  int norm_iterations = 0;
  std::optional<std::string> error;
};

struct SweepOptions {
  std::vector<double> alphas{0.0, 0.5, 0.75, 0.875, 0.9375, 0.96875};
  int depth = 12;
  std::uint64_t seed = 1;
  std::optional<double> lp_p = 3.0;
  int crosscheck_depth = 8;  // 0 disables the dense cross-check
  int maximal_trials = 16;
  bool record_timing = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Least-squares slope of log(op_norm) against log(a2_constant) over rows
  // with a2_constant >= 2; empty with fewer than two such rows.
  std::optional<double> slope;
};

SweepResult run_sweep(const SweepOptions& options);

std::optional<double> loglog_slope(const std::vector<SweepRow>& rows);

// Fixed columns: alpha,depth,a2_constant,op_norm,ratio,maximal_lb,lp_p,
// lp_lower_ratio,runtime_ms.
std::string sweep_csv(const SweepResult& result);
nlohmann::json sweep_json(const SweepResult& result);

struct HilbertComparison {
  double a = 0.0;
  double b = 1.0;
  int shifts = 1;
  int dilations = 1;
  int depth = 0;
  double fitted_scalar = 0.0;
  double relative_error = 0.0;
  std::size_t cells_compared = 0;
};

// Fits closed-form H chi_[a,b] ~ scalar * (grid-averaged H^d chi_[a,b]) on the
// cells at distance >= 4 cell widths from a and b.
HilbertComparison hilbert_compare(double a, double b, int shifts, int dilations, int depth,
                                  std::uint64_t seed, const PetermichlOptions& options = {});

nlohmann::json to_json(const HilbertComparison& c);

// Shortest round-trip decimal representation used for CSV output.
std::string format_number(double value);

}  // namespace dyadic
