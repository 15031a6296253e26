#pragma once

#include <cstdint>
#include <string_view>

#include "dyadic/interval.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/step_function.hpp"

namespace dyadic {

// Dyadic A_p constant: sup over every dyadic I of level 0..depth of
// avg_I(w) * avg_I(w^{1-p'})^{p-1}.
struct ApReport {
  double p = 2.0;
  double constant = 1.0;
  DyadicInterval witness;
  int depth = 0;
};

ApReport ap_constant(const StepFunction& w, double p);

// avg_I(w) * avg_I(w^{1-p'})^{p-1} on one interval.
double ap_product(const StepFunction& w, double p, const DyadicInterval& interval);

// The dual weight w^{1-p'}; for p = 2 this is 1/w computed cell-wise.
StepFunction dual_weight(const StepFunction& w, double p);

StepFunction dyadic_maximal(const StepFunction& f);
StepFunction weighted_dyadic_maximal(const StepFunction& f, const StepFunction& sigma);

namespace serial {
StepFunction dyadic_maximal(const StepFunction& f);
StepFunction weighted_dyadic_maximal(const StepFunction& f, const StepFunction& sigma);
}  // namespace serial

// (sum |f_i|^p w_i 2^-depth)^{1/p}.
double weighted_lp_norm(const StepFunction& f, const StepFunction& w, double p);

enum class NormMethod { DenseSingularValue, PowerIteration };

std::string_view method_name(NormMethod method);

struct NormReport {
  double value = 0.0;
  NormMethod method = NormMethod::PowerIteration;
  int iterations = 0;
  double residual = 0.0;
  int depth = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eedULL;
};

// ||H||_{L^2(w) -> L^2(w)} for the depth-truncated operator: the largest
// singular value of W^{1/2} H W^{-1/2}.
NormReport weighted_operator_norm(const HaarShiftSpec& spec, const StepFunction& w,
                                  int depth, NormMethod method,
                                  const PowerIterationOptions& options = {});

struct MaximalProbeOptions {
  int ascent_passes = 2;
};

// Lower estimate of ||M^d||_{L^2(w) -> L^2(w)} from test functions.
double maximal_weighted_norm_lb(const StepFunction& w, int trials, std::uint64_t seed,
                                const MaximalProbeOptions& options = {});

// Cell averages of x^alpha, -1 < alpha < 1.
StepFunction power_weight(double alpha, int depth);

}  // namespace dyadic
