#pragma once

#include <vector>

#include "dyadic/interval.hpp"
#include "dyadic/step_function.hpp"

namespace dyadic {

// h_I = |I|^{-1/2} (chi_{left half} - chi_{right half}) realized at the given
// grid depth; requires level(I) <= depth - 1.
StepFunction haar_function(const DyadicInterval& interval, int depth);

// Coefficients <f, h_I> for every I of level 0..depth-1 (heap layout), plus the
// mean of f over the root.
class HaarCoefficients {
 public:
  HaarCoefficients() = default;
  HaarCoefficients(int depth, double mean, std::vector<double> coeffs);

  int depth() const { return depth_; }
  double mean() const { return mean_; }
  std::span<const double> values() const { return coeffs_; }
  std::span<double> values() { return coeffs_; }

  double at(const DyadicInterval& interval) const;

 private:
  int depth_ = 0;
  double mean_ = 0.0;
  std::vector<double> coeffs_;
};

HaarCoefficients haar_expand(const StepFunction& f);
StepFunction haar_synthesize(const HaarCoefficients& coeffs);

}  // namespace dyadic
