#pragma once

#include <span>

#include "dyadic/interval.hpp"
#include "dyadic/step_function.hpp"

namespace dyadic {

struct OscillationParams {
  double lambda = 0.25;

  void validate() const;
};

// Nonincreasing rearrangement (f chi_Q)^*(s) = inf{t >= 0 : |{x in Q : |f| > t}| <= s},
// for 0 < s <= |Q|.
double rearrangement_at(const StepFunction& f, const DyadicInterval& q, double s);

// Same on raw cell values of equal measure `cell_measure`.
double rearrangement_of(std::span<const double> values, double cell_measure, double s);

// All m with |{f > m}| <= |Q|/2 and |{f < m}| <= |Q|/2 form [low, high].
struct MedianInterval {
  double low = 0.0;
  double high = 0.0;
};

MedianInterval median_interval(const StepFunction& f, const DyadicInterval& q);
MedianInterval median_interval_of(std::span<const double> values);

// The lower median.
double median(const StepFunction& f, const DyadicInterval& q);

struct Oscillation {
  double value = 0.0;   // omega_lambda(f, Q)
  double center = 0.0;  // a minimizing recentering constant c
};

// omega_lambda(f, Q) = inf_c ((f - c) chi_Q)^*(lambda |Q|), computed exactly.
Oscillation local_mean_oscillation(const StepFunction& f, const DyadicInterval& q,
                                   double lambda);
Oscillation local_mean_oscillation_of(std::span<const double> values, double lambda);

// Number of equal-measure cells, out of `cells`, that may exceed a level while
// keeping the exceedance measure <= fraction * (total measure).
std::size_t allowed_exceedances(std::size_t cells, double fraction);

// For each cell of Q0, the max of omega_lambda(f, Q') over dyadic Q' with the
// cell in Q' and Q' inside Q0. Cells outside Q0 are zero.
StepFunction local_sharp_maximal_dyadic(const StepFunction& f, const DyadicInterval& q0,
                                        double lambda);

namespace serial {
StepFunction local_sharp_maximal_dyadic(const StepFunction& f, const DyadicInterval& q0,
                                        double lambda);
}

}  // namespace dyadic
