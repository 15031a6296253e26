#pragma once

// Data-parallel building blocks. Every kernel exists twice: a plain serial
// reference and an OpenMP version. Both evaluate each output element with the
// same sequence of floating-point operations, so their results are bitwise
// identical for any thread count.

#include <cstdint>
#include <span>
#include <vector>

namespace dyadic {

// Haar shift coefficients compiled for one grid depth: a gather from source
// Haar slots to target Haar slots, grouped by target.
struct CompiledShift {
  int depth = 0;
  std::vector<std::uint32_t> row_start;  // one row per target slot, plus end
  std::vector<std::uint32_t> source;
  std::vector<double> coeff;

  std::size_t slots() const { return row_start.empty() ? 0 : row_start.size() - 1; }
  std::size_t nonzeros() const { return coeff.size(); }
};

// |I|^{-1/2} for an interval of the given level.
double haar_height(int level);

namespace kernels {

namespace serial {

// Sums over all dyadic intervals, heap layout, levels 0..depth.
void level_sums(std::span<const double> cells, std::span<double> sums);
// Haar coefficients in heap layout (cells.size() - 1 slots); returns the mean.
double haar_analyze(std::span<const double> cells, std::span<double> coeffs,
                    std::vector<double>& scratch);
void haar_synthesize(double mean, std::span<const double> coeffs,
                     std::span<double> cells, std::vector<double>& scratch);
void apply_compiled(const CompiledShift& op, std::span<const double> in,
                    std::span<double> out);
// For each cell, the max over dyadic I containing it of num(I) / den(I),
// given level sums of numerator and denominator.
void chain_max(std::span<const double> num_sums, std::span<const double> den_sums,
               int depth, std::span<double> out);
void scale(std::span<const double> x, std::span<const double> factors,
           std::span<double> out);

}  // namespace serial

namespace parallel {

// Sums over all dyadic intervals, heap layout, levels 0..depth.
void level_sums(std::span<const double> cells, std::span<double> sums);
// Haar coefficients in heap layout (cells.size() - 1 slots); returns the mean.
double haar_analyze(std::span<const double> cells, std::span<double> coeffs,
                    std::vector<double>& scratch);
void haar_synthesize(double mean, std::span<const double> coeffs,
                     std::span<double> cells, std::vector<double>& scratch);
void apply_compiled(const CompiledShift& op, std::span<const double> in,
                    std::span<double> out);
// For each cell, the max over dyadic I containing it of num(I) / den(I),
// given level sums of numerator and denominator.
void chain_max(std::span<const double> num_sums, std::span<const double> den_sums,
               int depth, std::span<double> out);
void scale(std::span<const double> x, std::span<const double> factors,
           std::span<double> out);

}  // namespace parallel

int max_threads();

}  // namespace kernels
}  // namespace dyadic
