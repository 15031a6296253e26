#pragma once

#include <span>

#include "dyadic/rearrangement.hpp"
#include "dyadic/step_function.hpp"

// Slow, direct implementations used only to cross-check the fast paths.
namespace dyadic::reference {

// inf{t >= 0 : cell_measure * #{|v| > t} <= s}, scanning candidate t values.
double rearrangement(std::span<const double> values, double cell_measure, double s);

// Admissible medians found by testing every value against the definition.
MedianInterval median_interval(std::span<const double> values);

// min over c in {values} U {pairwise midpoints} of the rearrangement of
// |v - c| at lambda * |Q|.
double oscillation(std::span<const double> values, double lambda);

// sup over every dyadic I containing the cell, averages summed directly.
StepFunction dyadic_maximal(const StepFunction& f);
StepFunction weighted_dyadic_maximal(const StepFunction& f, const StepFunction& sigma);

double ap_constant(const StepFunction& w, double p);

// max |G - Id| over the Gram matrix of {1} U {h_I : level(I) <= depth - 1}.
double haar_gram_error(int depth);

}  // namespace dyadic::reference
