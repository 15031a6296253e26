#include "dyadic/haar.hpp"

#include "dyadic/error.hpp"
#include "dyadic/kernels.hpp"

namespace dyadic {

StepFunction haar_function(const DyadicInterval& interval, int depth) {
  if (interval.level > depth - 1)
    fail(Errc::IntervalTooFine, "Haar function on " + interval.str() +
                                    " is not resolved at depth " + std::to_string(depth));
  StepFunction f = StepFunction::zeros(depth);
  const auto [lo, hi] = f.cell_range(interval);
  std::vector<double> cells(f.cells().begin(), f.cells().end());
  const double height = haar_height(interval.level);
  const std::size_t mid = lo + (hi - lo) / 2;
  for (std::size_t i = lo; i < mid; ++i) cells[i] = height;
  for (std::size_t i = mid; i < hi; ++i) cells[i] = -height;
  return StepFunction(depth, std::move(cells));
}

HaarCoefficients::HaarCoefficients(int depth, double mean, std::vector<double> coeffs)
    : depth_(depth), mean_(mean), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() + 1 != (std::size_t{1} << depth))
    fail(Errc::InvalidArgument, "Haar coefficient count does not match depth");
}

double HaarCoefficients::at(const DyadicInterval& interval) const {
  if (interval.level < 0 || interval.level >= depth_)
    fail(Errc::IntervalTooFine, interval.str() + " has no coefficient at depth " +
                                    std::to_string(depth_));
  return coeffs_[heap_slot(interval)];
}

HaarCoefficients haar_expand(const StepFunction& f) {
  std::vector<double> coeffs(f.size() - 1);
  std::vector<double> scratch;
  const double mean = kernels::parallel::haar_analyze(f.cells(), coeffs, scratch);
  return HaarCoefficients(f.depth(), mean, std::move(coeffs));
}

StepFunction haar_synthesize(const HaarCoefficients& coeffs) {
  std::vector<double> cells(std::size_t{1} << coeffs.depth());
  std::vector<double> scratch;
  kernels::parallel::haar_synthesize(coeffs.mean(), coeffs.values(), cells, scratch);
  return StepFunction(coeffs.depth(), std::move(cells));
}

}  // namespace dyadic
