#include "dyadic/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dyadic/error.hpp"

namespace dyadic {

void OscillationParams::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0))
    fail(Errc::BadQuantile, "lambda must lie in (0, 1), got " + std::to_string(lambda));
}

std::size_t allowed_exceedances(std::size_t cells, double fraction) {
  const double k = std::floor(fraction * static_cast<double>(cells));
  return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

double rearrangement_of(std::span<const double> values, double cell_measure, double s) {
  const double total = cell_measure * static_cast<double>(values.size());
  if (!(s > 0.0 && s <= total))
    fail(Errc::BadQuantile, "quantile " + std::to_string(s) + " outside (0, " +
                                std::to_string(total) + "]");
  const std::size_t k = allowed_exceedances(values.size(), s / total);
  if (k >= values.size()) return 0.0;
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(),
                 [](double v) { return std::fabs(v); });
  std::nth_element(mags.begin(), mags.begin() + k, mags.end(), std::greater<>());
  return mags[k];
}

double rearrangement_at(const StepFunction& f, const DyadicInterval& q, double s) {
  return rearrangement_of(f.cells_of(q), f.cell_width(), s);
}

MedianInterval median_interval_of(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return {sorted[(n + 1) / 2 - 1], sorted[n / 2]};
}

MedianInterval median_interval(const StepFunction& f, const DyadicInterval& q) {
  return median_interval_of(f.cells_of(q));
}

double median(const StepFunction& f, const DyadicInterval& q) {
  return median_interval(f, q).low;
}

namespace {

// Keep m - k cells inside the level set; the best window of that many
// consecutive sorted values, centred at its midpoint, attains the infimum.
Oscillation oscillation_sorted(std::span<const double> sorted, std::size_t k) {
  const std::size_t m = sorted.size();
  if (k >= m) return {0.0, sorted.empty() ? 0.0 : sorted[0]};
  const std::size_t window = m - k;
  Oscillation best{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i + window <= m; ++i) {
    const double lo = sorted[i];
    const double hi = sorted[i + window - 1];
    const double value = 0.5 * (hi - lo);
    if (value < best.value) best = {value, lo + 0.5 * (hi - lo)};
  }
  return best;
}

}  // namespace

Oscillation local_mean_oscillation_of(std::span<const double> values, double lambda) {
  OscillationParams{lambda}.validate();
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return oscillation_sorted(sorted, allowed_exceedances(sorted.size(), lambda));
}

Oscillation local_mean_oscillation(const StepFunction& f, const DyadicInterval& q,
                                   double lambda) {
  return local_mean_oscillation_of(f.cells_of(q), lambda);
}

namespace {

template <bool Parallel>
StepFunction sharp_maximal_impl(const StepFunction& f, const DyadicInterval& q0,
                                double lambda) {
  OscillationParams{lambda}.validate();
  const auto [lo, hi] = f.cell_range(q0);
  const int depth = f.depth();
  std::vector<double> best(f.size(), 0.0);
  std::vector<double> running(hi - lo, 0.0);
  // Each cell keeps the largest oscillation over the cubes of Q0's subtree
  // that contain it.
  for (int level = q0.level; level <= depth; ++level) {
    const std::size_t span = std::size_t{1} << (depth - level);
    const std::int64_t count = static_cast<std::int64_t>((hi - lo) / span);
#pragma omp parallel for schedule(dynamic, 4) if (Parallel && count > 1)
    for (std::int64_t j = 0; j < count; ++j) {
      const std::size_t first = j * span;
      std::vector<double> sorted(f.cells().begin() + lo + first,
                                 f.cells().begin() + lo + first + span);
      std::sort(sorted.begin(), sorted.end());
      const double omega =
          oscillation_sorted(sorted, allowed_exceedances(span, lambda)).value;
      for (std::size_t c = first; c < first + span; ++c)
        running[c] = std::max(running[c], omega);
    }
  }
  std::copy(running.begin(), running.end(), best.begin() + lo);
  return StepFunction(depth, std::move(best));
}

}  // namespace

StepFunction local_sharp_maximal_dyadic(const StepFunction& f, const DyadicInterval& q0,
                                        double lambda) {
  return sharp_maximal_impl<true>(f, q0, lambda);
}

namespace serial {
StepFunction local_sharp_maximal_dyadic(const StepFunction& f, const DyadicInterval& q0,
                                        double lambda) {
  return sharp_maximal_impl<false>(f, q0, lambda);
}
}  // namespace serial

}  // namespace dyadic
