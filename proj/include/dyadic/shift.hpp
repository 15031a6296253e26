#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dyadic/haar.hpp"
#include "dyadic/interval.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/step_function.hpp"

namespace dyadic {

// One term a * <f, h_{Q'}> h_{Q''} of the cube Q.
struct ShiftEntry {
  DyadicInterval q;
  DyadicInterval qp;
  DyadicInterval qpp;
  double a = 0.0;
};

// A Haar shift operator of index tau in the canonical Haar basis. Each entry
// requires Q', Q'' inside Q, at most tau generations below it, and
// |a| <= C (|Q'| |Q''|)^{1/2} / |Q|.
struct HaarShiftSpec {
  int tau = 0;
  double bound_constant = 1.0;
  std::vector<ShiftEntry> entries;

  // C (|Q'| |Q''|)^{1/2} / |Q| for the entry's geometry.
  static double admissible_bound(double bound_constant, const ShiftEntry& entry);

  // Throws AdmissibilityViolation on the first offending entry.
  void validate() const;
};

// Terms of cubes Q with level(Q) <= max_level are kept. The default keeps
// level(Q) <= depth - 1 - tau so every Haar function involved is resolved on
// the depth grid.
struct TruncationPolicy {
  int depth = 0;
  int max_level = -1;

  static TruncationPolicy for_spec(const HaarShiftSpec& spec, int depth) {
    return {depth, depth - 1 - spec.tau};
  }
};

CompiledShift compile_shift(const HaarShiftSpec& spec, const TruncationPolicy& policy);

StepFunction apply_compiled(const CompiledShift& op, const StepFunction& f);
StepFunction apply_shift(const HaarShiftSpec& spec, const StepFunction& f,
                         const TruncationPolicy& policy);
StepFunction apply_shift(const HaarShiftSpec& spec, const StepFunction& f);

namespace serial {
StepFunction apply_compiled(const CompiledShift& op, const StepFunction& f);
}

// H^d f = sum_I <f, h_I> (h_{I-} - h_{I+}) over I of level 0..depth-2.
HaarShiftSpec dyadic_hilbert_spec(int depth);

HaarShiftSpec adjoint_spec(const HaarShiftSpec& spec);

constexpr std::size_t kMaxDenseCells = 4096;

// Column j is the operator applied to the indicator of cell j.
Eigen::MatrixXd assemble_matrix(const HaarShiftSpec& spec, int depth);

// sup over fs and t of t |{|H f| > t}| / ||f||_1.
double weak11_constant(const HaarShiftSpec& spec, std::span<const StepFunction> fs);

// Spread (max - min) over the cells of Q0 of H(f chi_{outside Q0^tau}). The
// terms it collects are constant on Q0, so the spread is rounding only.
double far_part_spread(const HaarShiftSpec& spec, const StepFunction& f,
                       const DyadicInterval& q0);
double far_part_spread(const CompiledShift& op, int tau, const StepFunction& f,
                       const DyadicInterval& q0);

// omega_lambda(H f, Q0) / avg_{Q0^tau} |f|, with Q0^tau zero-padded above the
// root. Zero when both sides vanish; infinite if only the average does.
double oscillation_ratio(const HaarShiftSpec& spec, const StepFunction& f,
                         const DyadicInterval& q0, double lambda);

class Rng;

// Entries drawn uniformly from the admissible interval; each candidate
// (Q, Q', Q'') is kept with probability `density`.
HaarShiftSpec random_shift_spec(int tau, int depth, double density, double bound_constant,
                                Rng& rng);

}  // namespace dyadic
