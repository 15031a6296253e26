#include "dyadic/petermichl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dyadic/error.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/random.hpp"
#include "dyadic/shift.hpp"

namespace dyadic {
namespace {

constexpr int kCoarsestLevel = 60;

// Overlap lengths between a partition with edges fine_edges and the uniform
// partition of [0, 1) into 2^depth cells, visited in order.
template <typename Visit>
void for_each_overlap(const std::vector<double>& fine_edges, int depth, Visit&& visit) {
  const std::size_t cells = std::size_t{1} << depth;
  const double width = std::ldexp(1.0, -depth);
  std::size_t a = 0;
  while (a + 1 < fine_edges.size() && fine_edges[a + 1] <= 0.0) ++a;
  double x = 0.0;
  for (std::size_t i = 0; i < cells && a + 1 < fine_edges.size();) {
    const double cell_end = static_cast<double>(i + 1) * width;
    const double end = std::min(cell_end, fine_edges[a + 1]);
    if (end > x) visit(a, i, end - x);
    x = end;
    if (end >= cell_end) ++i;
    if (end >= fine_edges[a + 1]) ++a;
  }
}

}  // namespace

StepFunction hd_on_grid(const StepFunction& f, const GridTransform& grid,
                        const PetermichlOptions& options) {
  if (options.fine_levels < 0 || options.padding_levels < 0)
    fail(Errc::InvalidArgument, "grid levels must be >= 0");
  if (!(grid.dilation >= 1.0 && grid.dilation < 2.0) || !(grid.phase >= 0.0 && grid.phase < 1.0))
    fail(Errc::InvalidArgument, "grid dilation must lie in [1, 2) and phase in [0, 1)");
  const int fine_level = f.depth() + options.fine_levels;
  const int block_level = fine_level + options.padding_levels;  // fine cells per block: 2^block_level
  if (block_level > 26) fail(Errc::DepthTooLarge, "grid blocks too large");
  if (block_level < 2) fail(Errc::InvalidArgument, "grid too coarse for H^d");
  const double delta = grid.dilation * std::ldexp(1.0, -fine_level);

  // Local fine cells a = 0..count-1 cover [0, 1); cell a is
  // [(a - phase) delta, (a + 1 - phase) delta) with global index offset + a.
  const double reach = 1.0 / delta + grid.phase;
  const std::size_t count = static_cast<std::size_t>(std::ceil(reach));
  std::vector<double> edges(count + 1);
  for (std::size_t a = 0; a <= count; ++a) edges[a] = (static_cast<double>(a) - grid.phase) * delta;

  std::vector<double> fine(count, 0.0);
  for_each_overlap(edges, f.depth(), [&](std::size_t a, std::size_t i, double len) {
    fine[a] += f[i] * len / delta;
  });

  // Blocks of 2^block_level fine cells containing the window (one or two).
  const std::uint64_t first = grid.offset;
  const std::uint64_t last = grid.offset + count - 1;
  const std::uint64_t block_lo = first >> block_level;
  const std::uint64_t block_hi = last >> block_level;
  const std::size_t block_cells = std::size_t{1} << block_level;

  static thread_local std::vector<CompiledShift> compiled_cache(32);
  CompiledShift& op = compiled_cache[block_level];
  if (op.depth != block_level || op.row_start.empty()) {
    const HaarShiftSpec spec = dyadic_hilbert_spec(block_level);
    op = compile_shift(spec, TruncationPolicy::for_spec(spec, block_level));
  }

  std::vector<double> out(count, 0.0);
  std::vector<double> masses;
  std::vector<double> cells(block_cells), in(block_cells - 1), coeffs(block_cells - 1), scratch;
  for (std::uint64_t b = block_lo; b <= block_hi; ++b) {
    const std::uint64_t base = b << block_level;
    std::fill(cells.begin(), cells.end(), 0.0);
    double mass = 0.0;
    for (std::size_t a = 0; a < count; ++a) {
      const std::uint64_t m = grid.offset + a;
      if ((m >> block_level) != b) continue;
      cells[m - base] = fine[a];
    }
    mass = pairwise_sum(cells) * delta;
    masses.push_back(mass);
    kernels::serial::haar_analyze(cells, in, scratch);
    kernels::serial::apply_compiled(op, in, coeffs);
    kernels::serial::haar_synthesize(0.0, coeffs, cells, scratch);
    for (std::size_t a = 0; a < count; ++a) {
      const std::uint64_t m = grid.offset + a;
      if ((m >> block_level) == b) out[a] = cells[m - base];
    }
  }

  if (options.far_field) {
    // An ancestor I at level c (fine cells per I: 2^c) contributes
    // <f, h_I> (h_{I-} - h_{I+}) on the blocks it contains.
    for (int c = block_level + 1; c <= kCoarsestLevel; ++c) {
      const double length = delta * std::ldexp(1.0, c);
      const double height = 1.0 / std::sqrt(length);
      const double child_height = 1.0 / std::sqrt(0.5 * length);
      for (std::uint64_t b = block_lo; b <= block_hi; ++b) {
        const std::uint64_t ancestor = b >> (c - block_level);
        double coefficient = 0.0;
        for (std::uint64_t b2 = block_lo; b2 <= block_hi; ++b2) {
          if ((b2 >> (c - block_level)) != ancestor) continue;
          const bool left = ((b2 >> (c - 1 - block_level)) & 1) == 0;
          coefficient += (left ? 1.0 : -1.0) * masses[b2 - block_lo];
        }
        coefficient *= height;
        if (coefficient == 0.0) continue;
        const bool in_left_child = ((b >> (c - 1 - block_level)) & 1) == 0;
        const double sign_child = in_left_child ? 1.0 : -1.0;
        for (std::size_t a = 0; a < count; ++a) {
          const std::uint64_t m = grid.offset + a;
          if ((m >> block_level) != b) continue;
          // Which half of the child holds this fine cell.
          const bool left_half = ((m >> (c - 2)) & 1) == 0;
          out[a] += coefficient * sign_child * child_height * (left_half ? 1.0 : -1.0);
        }
      }
    }
  }

  std::vector<double> result(f.size(), 0.0);
  const double width = f.cell_width();
  for_each_overlap(edges, f.depth(), [&](std::size_t a, std::size_t i, double len) {
    result[i] += out[a] * len / width;
  });
  return StepFunction(f.depth(), std::move(result));
}

std::vector<GridTransform> averaging_grids(int shifts, int dilations, std::uint64_t seed) {
  if (shifts < 1 || dilations < 1)
    fail(Errc::InvalidArgument, "shift and dilation counts must be >= 1");
  Rng rng(seed);
  std::vector<GridTransform> grids;
  for (int j = 0; j < dilations; ++j) {
    for (int i = 0; i < shifts; ++i) {
      if (i == 0 && j == 0) {
        grids.push_back(GridTransform::identity());
        continue;
      }
      GridTransform g;
      const double dilation = std::exp2((static_cast<double>(j) + rng.uniform()) / dilations);
      g.dilation = std::min(dilation, std::nextafter(2.0, 1.0));
      g.phase = rng.uniform();
      g.offset = rng.bits() >> 2;
      grids.push_back(g);
    }
  }
  return grids;
}

StepFunction petermichl_average(const StepFunction& f, int shifts, int dilations,
                                std::uint64_t seed, const PetermichlOptions& options) {
  const std::vector<GridTransform> grids = averaging_grids(shifts, dilations, seed);
  std::vector<std::vector<double>> outputs(grids.size());
  const std::int64_t count = static_cast<std::int64_t>(grids.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t g = 0; g < count; ++g) {
    const StepFunction out = hd_on_grid(f, grids[g], options);
    outputs[g].assign(out.cells().begin(), out.cells().end());
  }
  // Fixed summation order keeps the average independent of scheduling.
  std::vector<double> sum(f.size(), 0.0);
  for (const auto& o : outputs)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += o[i];
  for (double& v : sum) v /= static_cast<double>(grids.size());
  return StepFunction(f.depth(), std::move(sum));
}

double hilbert_of_indicator(double a, double b, double x) {
  return std::log(std::fabs((x - a) / (x - b))) / std::numbers::pi;
}

double hilbert_of_indicator_average(double a, double b, double x0, double x1) {
  auto antiderivative = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::fabs(u)) - u; };
  const double integral = antiderivative(x1 - a) - antiderivative(x0 - a) -
                          antiderivative(x1 - b) + antiderivative(x0 - b);
  return integral / (std::numbers::pi * (x1 - x0));
}

StepFunction indicator_of(double a, double b, int depth) {
  if (!(a < b)) fail(Errc::InvalidArgument, "indicator needs a < b");
  const std::size_t n = std::size_t{1} << depth;
  const double width = std::ldexp(1.0, -depth);
  std::vector<double> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x0 = static_cast<double>(i) * width;
    const double lo = std::max(a, x0);
    const double hi = std::min(b, x0 + width);
    cells[i] = hi > lo ? (hi - lo) / width : 0.0;
  }
  return StepFunction(depth, std::move(cells));
}

}  // namespace dyadic
