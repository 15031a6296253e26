#include "dyadic/step_function.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dyadic/error.hpp"
#include "dyadic/kernels.hpp"

namespace dyadic {

StepFunction::StepFunction(int depth, std::vector<double> cells)
    : depth_(depth), cells_(std::move(cells)) {
  if (depth < 0 || depth > 30) fail(Errc::InvalidArgument, "depth must be in [0, 30]");
  if (cells_.size() != (std::size_t{1} << depth))
    fail(Errc::InvalidArgument, "expected 2^" + std::to_string(depth) + " cells, got " +
                                    std::to_string(cells_.size()));
  for (double v : cells_)
    if (!std::isfinite(v)) fail(Errc::InvalidArgument, "cell values must be finite");
}

StepFunction StepFunction::constant(int depth, double value) {
  if (depth < 0 || depth > 30) fail(Errc::InvalidArgument, "depth must be in [0, 30]");
  return StepFunction(depth, std::vector<double>(std::size_t{1} << depth, value));
}

StepFunction StepFunction::indicator(int depth, const DyadicInterval& interval) {
  StepFunction f = zeros(depth);
  const auto [lo, hi] = f.cell_range(interval);
  std::fill(f.cells_.begin() + lo, f.cells_.begin() + hi, 1.0);
  return f;
}

double StepFunction::cell_width() const { return std::ldexp(1.0, -depth_); }

std::pair<std::size_t, std::size_t> StepFunction::cell_range(
    const DyadicInterval& interval) const {
  if (interval.level > depth_)
    fail(Errc::IntervalTooFine,
         interval.str() + " is finer than grid depth " + std::to_string(depth_));
  if (interval.level < 0 || interval.index < 0 ||
      interval.index >= (std::int64_t{1} << interval.level))
    fail(Errc::InvalidArgument, interval.str() + " is not inside the root");
  const std::size_t span = std::size_t{1} << (depth_ - interval.level);
  const std::size_t lo = static_cast<std::size_t>(interval.index) * span;
  return {lo, lo + span};
}

std::span<const double> StepFunction::cells_of(const DyadicInterval& interval) const {
  const auto [lo, hi] = cell_range(interval);
  return cells().subspan(lo, hi - lo);
}

bool is_weight(const StepFunction& w) {
  return std::all_of(w.cells().begin(), w.cells().end(), [](double v) { return v > 0.0; });
}

void require_weight(const StepFunction& w) {
  const auto cells = w.cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!(cells[i] > 0.0))
      fail(Errc::NonpositiveWeight,
           "weight cell " + std::to_string(i) + " is " + std::to_string(cells[i]));
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  if (values.size() == 2) return values[0] + values[1];
  const std::size_t half = std::bit_floor(values.size() - 1);
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double integral(const StepFunction& f) { return pairwise_sum(f.cells()) * f.cell_width(); }

double integral(const StepFunction& f, const DyadicInterval& interval) {
  if (interval.level < 0) {
    if (interval.index < 0) fail(Errc::InvalidArgument, interval.str() + " is not a super-root");
    return interval.index == 0 ? integral(f) : 0.0;
  }
  return pairwise_sum(f.cells_of(interval)) * f.cell_width();
}

double average(const StepFunction& f, const DyadicInterval& interval) {
  if (interval.level < 0) return integral(f, interval) / interval.length();
  const auto cells = f.cells_of(interval);
  return pairwise_sum(cells) / static_cast<double>(cells.size());
}

StepFunction refine(const StepFunction& f, int new_depth) {
  if (new_depth < f.depth())
    fail(Errc::InvalidArgument, "refine target depth is coarser than the function");
  const std::size_t rep = std::size_t{1} << (new_depth - f.depth());
  std::vector<double> cells;
  cells.reserve(f.size() * rep);
  for (double v : f.cells()) cells.insert(cells.end(), rep, v);
  return StepFunction(new_depth, std::move(cells));
}

StepFunction zero_pad_embed(const StepFunction& f, int levels) {
  if (levels < 0) fail(Errc::InvalidArgument, "padding levels must be >= 0");
  std::vector<double> cells(f.size() << levels, 0.0);
  std::copy(f.cells().begin(), f.cells().end(), cells.begin());
  return StepFunction(f.depth() + levels, std::move(cells));
}

StepFunction abs(const StepFunction& f) {
  std::vector<double> cells(f.cells().begin(), f.cells().end());
  for (double& v : cells) v = std::fabs(v);
  return StepFunction(f.depth(), std::move(cells));
}

namespace {
void require_same_depth(const StepFunction& f, const StepFunction& g) {
  if (f.depth() != g.depth())
    fail(Errc::DepthMismatch, "depths " + std::to_string(f.depth()) + " and " +
                                  std::to_string(g.depth()) + " differ");
}
}  // namespace

StepFunction multiply(const StepFunction& f, const StepFunction& g) {
  require_same_depth(f, g);
  std::vector<double> cells(f.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = f[i] * g[i];
  return StepFunction(f.depth(), std::move(cells));
}

StepFunction reciprocal(const StepFunction& w) {
  require_weight(w);
  std::vector<double> cells(w.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = 1.0 / w[i];
  return StepFunction(w.depth(), std::move(cells));
}

StepFunction axpby(double a, const StepFunction& f, double b, const StepFunction& g) {
  require_same_depth(f, g);
  std::vector<double> cells(f.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = a * f[i] + b * g[i];
  return StepFunction(f.depth(), std::move(cells));
}

LevelSums::LevelSums(const StepFunction& f) : LevelSums(f.cells()) {}

LevelSums::LevelSums(std::span<const double> cells)
    : depth_(std::countr_zero(cells.size())), sums_(2 * cells.size() - 1) {
  kernels::parallel::level_sums(cells, sums_);
}

}  // namespace dyadic
