#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/interval.hpp"

namespace dyadic {

// A function constant on each of the 2^depth cells of the uniform dyadic grid
// over [0, 1). Cell i holds the value on [i 2^-depth, (i+1) 2^-depth).
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(int depth, std::vector<double> cells);

  static StepFunction constant(int depth, double value);
  static StepFunction zeros(int depth) { return constant(depth, 0.0); }
  static StepFunction indicator(int depth, const DyadicInterval& interval);

  int depth() const { return depth_; }
  std::size_t size() const { return cells_.size(); }
  double cell_width() const;

  std::span<const double> cells() const { return cells_; }
  double operator[](std::size_t i) const { return cells_[i]; }

  // The cells covered by an interval of level 0..depth.
  std::span<const double> cells_of(const DyadicInterval& interval) const;
  std::pair<std::size_t, std::size_t> cell_range(const DyadicInterval& interval) const;

  bool operator==(const StepFunction&) const = default;

 private:
  int depth_ = 0;
  std::vector<double> cells_{0.0};
};

// Throws NonpositiveWeight unless every cell is > 0.
void require_weight(const StepFunction& w);
bool is_weight(const StepFunction& w);

// Tree (pairwise) summation; for power-of-two lengths the association order is
// exactly that of the dyadic tree.
double pairwise_sum(std::span<const double> values);

double integral(const StepFunction& f);
double integral(const StepFunction& f, const DyadicInterval& interval);

// (1/|I|) times the integral of f over I. Super-root intervals (negative level)
// see f extended by zero outside [0, 1).
double average(const StepFunction& f, const DyadicInterval& interval);

StepFunction refine(const StepFunction& f, int new_depth);

// f on the super-root [0, 2^levels), zero outside [0, 1), on the grid of the
// same cell width.
StepFunction zero_pad_embed(const StepFunction& f, int levels);

// Cell-wise helpers.
StepFunction abs(const StepFunction& f);
StepFunction multiply(const StepFunction& f, const StepFunction& g);
StepFunction reciprocal(const StepFunction& w);
StepFunction axpby(double a, const StepFunction& f, double b, const StepFunction& g);

// Sums of f over every dyadic interval, levels 0..depth, in heap layout.
class LevelSums {
 public:
  explicit LevelSums(const StepFunction& f);
  explicit LevelSums(std::span<const double> cells);

  int depth() const { return depth_; }
  double sum(const DyadicInterval& interval) const { return sums_[heap_slot(interval)]; }
  double sum(int level, std::int64_t index) const { return sums_[heap_slot(level, index)]; }
  std::span<const double> level(int l) const {
    return std::span<const double>(sums_).subspan(heap_slot(l, 0), std::size_t{1} << l);
  }

 private:
  int depth_ = 0;
  std::vector<double> sums_;
};

}  // namespace dyadic
