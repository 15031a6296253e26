#include "dyadic/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>

#include <omp.h>

namespace dyadic {

double haar_height(int level) {
  const double base = std::ldexp(1.0, level / 2);
  return (level % 2 == 0) ? base : base * std::sqrt(2.0);
}

namespace kernels {
namespace {

constexpr std::size_t kParallelThreshold = 1024;

int depth_of(std::size_t cells) { return std::countr_zero(cells); }

// Per-element bodies shared by both variants.

inline double pair_sum(std::span<const double> finer, std::size_t i) {
  return finer[2 * i] + finer[2 * i + 1];
}

inline double haar_coefficient(std::span<const double> child_sums, std::size_t i,
                               double height, double cell_width) {
  return height * (child_sums[2 * i] - child_sums[2 * i + 1]) * cell_width;
}

inline double row_value(const CompiledShift& op, std::span<const double> in,
                        std::size_t row) {
  double acc = 0.0;
  for (std::uint32_t e = op.row_start[row]; e < op.row_start[row + 1]; ++e)
    acc += op.coeff[e] * in[op.source[e]];
  return acc;
}

template <bool Parallel>
void level_sums_impl(std::span<const double> cells, std::span<double> sums) {
  const int depth = depth_of(cells.size());
  assert(sums.size() == 2 * cells.size() - 1);
  std::copy(cells.begin(), cells.end(), sums.begin() + (cells.size() - 1));
  for (int l = depth - 1; l >= 0; --l) {
    const std::size_t n = std::size_t{1} << l;
    const auto finer = sums.subspan(2 * n - 1, 2 * n);
    auto here = sums.subspan(n - 1, n);
    const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for if (Parallel && n >= kParallelThreshold)
    for (std::int64_t i = 0; i < count; ++i) here[i] = pair_sum(finer, i);
  }
}

template <bool Parallel>
double haar_analyze_impl(std::span<const double> cells, std::span<double> coeffs,
                         std::vector<double>& scratch) {
  const int depth = depth_of(cells.size());
  scratch.resize(2 * cells.size() - 1);
  level_sums_impl<Parallel>(cells, scratch);
  const double width = std::ldexp(1.0, -depth);
  for (int l = 0; l < depth; ++l) {
    const std::size_t n = std::size_t{1} << l;
    const auto child = std::span<const double>(scratch).subspan(2 * n - 1, 2 * n);
    auto out = coeffs.subspan(n - 1, n);
    const double height = haar_height(l);
    const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for if (Parallel && n >= kParallelThreshold)
    for (std::int64_t i = 0; i < count; ++i)
      out[i] = haar_coefficient(child, i, height, width);
  }
  return scratch[0] * width;
}

// Top-down accumulation: the value on a level-(l+1) node is its parent's value
// plus or minus the scaled level-l coefficient, so each cell sees the sum
// mean + t_0 + t_1 + ... in root-to-leaf order.
template <bool Parallel>
void haar_synthesize_impl(double mean, std::span<const double> coeffs,
                          std::span<double> cells, std::vector<double>& scratch) {
  const int depth = depth_of(cells.size());
  scratch.assign(2 * cells.size() - 1, 0.0);
  scratch[0] = mean;
  for (int l = 0; l < depth; ++l) {
    const std::size_t n = std::size_t{1} << l;
    const double height = haar_height(l);
    const double* here = scratch.data() + (n - 1);
    double* finer = scratch.data() + (2 * n - 1);
    const double* c = coeffs.data() + (n - 1);
    const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for if (Parallel && n >= kParallelThreshold)
    for (std::int64_t i = 0; i < count; ++i) {
      const double t = height * c[i];
      finer[2 * i] = here[i] + t;
      finer[2 * i + 1] = here[i] - t;
    }
  }
  std::copy(scratch.end() - cells.size(), scratch.end(), cells.begin());
}

template <bool Parallel>
void apply_compiled_impl(const CompiledShift& op, std::span<const double> in,
                         std::span<double> out) {
  const std::int64_t rows = static_cast<std::int64_t>(op.slots());
#pragma omp parallel for if (Parallel && rows >= std::int64_t(kParallelThreshold))
  for (std::int64_t r = 0; r < rows; ++r) out[r] = row_value(op, in, r);
}

template <bool Parallel>
void chain_max_impl(std::span<const double> num, std::span<const double> den, int depth,
                    std::span<double> out) {
  std::vector<double> best(num.size());
  best[0] = num[0] / den[0];
  for (int l = 1; l <= depth; ++l) {
    const std::size_t n = std::size_t{1} << l;
    const std::size_t base = n - 1;
    const std::size_t up = n / 2 - 1;
    const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for if (Parallel && n >= kParallelThreshold)
    for (std::int64_t i = 0; i < count; ++i)
      best[base + i] = std::max(best[up + (i >> 1)], num[base + i] / den[base + i]);
  }
  const std::size_t cells = std::size_t{1} << depth;
  std::copy(best.end() - cells, best.end(), out.begin());
}

template <bool Parallel>
void scale_impl(std::span<const double> x, std::span<const double> factors,
                std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for if (Parallel && n >= std::int64_t(kParallelThreshold))
  for (std::int64_t i = 0; i < n; ++i) out[i] = x[i] * factors[i];
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

namespace serial {

void level_sums(std::span<const double> cells, std::span<double> sums) {
  level_sums_impl<false>(cells, sums);
}
double haar_analyze(std::span<const double> cells, std::span<double> coeffs,
                    std::vector<double>& scratch) {
  return haar_analyze_impl<false>(cells, coeffs, scratch);
}
void haar_synthesize(double mean, std::span<const double> coeffs,
                     std::span<double> cells, std::vector<double>& scratch) {
  haar_synthesize_impl<false>(mean, coeffs, cells, scratch);
}
void apply_compiled(const CompiledShift& op, std::span<const double> in,
                    std::span<double> out) {
  apply_compiled_impl<false>(op, in, out);
}
void chain_max(std::span<const double> num_sums, std::span<const double> den_sums,
               int depth, std::span<double> out) {
  chain_max_impl<false>(num_sums, den_sums, depth, out);
}
void scale(std::span<const double> x, std::span<const double> factors,
           std::span<double> out) {
  scale_impl<false>(x, factors, out);
}

}  // namespace serial

namespace parallel {

void level_sums(std::span<const double> cells, std::span<double> sums) {
  level_sums_impl<true>(cells, sums);
}
double haar_analyze(std::span<const double> cells, std::span<double> coeffs,
                    std::vector<double>& scratch) {
  return haar_analyze_impl<true>(cells, coeffs, scratch);
}
void haar_synthesize(double mean, std::span<const double> coeffs,
                     std::span<double> cells, std::vector<double>& scratch) {
  haar_synthesize_impl<true>(mean, coeffs, cells, scratch);
}
void apply_compiled(const CompiledShift& op, std::span<const double> in,
                    std::span<double> out) {
  apply_compiled_impl<true>(op, in, out);
}
void chain_max(std::span<const double> num_sums, std::span<const double> den_sums,
               int depth, std::span<double> out) {
  chain_max_impl<true>(num_sums, den_sums, depth, out);
}
void scale(std::span<const double> x, std::span<const double> factors,
           std::span<double> out) {
  scale_impl<true>(x, factors, out);
}

}  // namespace parallel
}  // namespace kernels
}  // namespace dyadic
