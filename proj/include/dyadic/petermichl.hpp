#pragma once

#include <cstdint>
#include <vector>

#include "dyadic/step_function.hpp"

namespace dyadic {

// A translated and dilated dyadic grid on the line. Its finest cells have
// length dilation * 2^-fine_level; a point x sits in fine cell
// offset + floor(x / cell_length + phase). `offset` carries the coarse part of
// the translation, so ancestors of the cells over [0, 1) are random too.
struct GridTransform {
  double dilation = 1.0;   // in [1, 2)
  double phase = 0.0;      // in [0, 1)
  std::uint64_t offset = 0;

  static GridTransform identity() { return {}; }
};

struct PetermichlOptions {
  int fine_levels = 1;      // grid cells are 2^-fine_levels of an input cell or finer
  int padding_levels = 3;   // blocks are 2^padding_levels times the fine span of [0, 1)
  bool far_field = true;    // add the exact contribution of every coarser interval
};

// H^d computed on one grid, then averaged back onto the input cells.
StepFunction hd_on_grid(const StepFunction& f, const GridTransform& grid,
                        const PetermichlOptions& options);

// The S * T grids used by petermichl_average: dilations stratified
// log-uniformly over [1, 2), random translations. The first grid is the
// identity grid.
std::vector<GridTransform> averaging_grids(int shifts, int dilations, std::uint64_t seed);

StepFunction petermichl_average(const StepFunction& f, int shifts, int dilations,
                                std::uint64_t seed, const PetermichlOptions& options = {});

// (1/pi) ln|(x - a)/(x - b)|, the Hilbert transform of the indicator of [a, b].
double hilbert_of_indicator(double a, double b, double x);
// Its exact average over [x0, x1].
double hilbert_of_indicator_average(double a, double b, double x0, double x1);

// Cell averages of the indicator of [a, b] at the given depth.
StepFunction indicator_of(double a, double b, int depth);

}  // namespace dyadic
