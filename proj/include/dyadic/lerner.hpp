#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyadic/interval.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/step_function.hpp"

namespace dyadic {

struct StoppingCube {
  DyadicInterval cube;
  double median = 0.0;              // lower median of f on the cube
  double parent_oscillation = 0.0;  // omega_{1/8}(f, parent cube)
};

// Generations k = 1, 2, ... of stopping cubes below the root Q0. Generation 0
// is {Q0} and is implicit.
struct LernerDecomposition {
  DyadicInterval root;
  std::vector<std::vector<StoppingCube>> generations;

  std::size_t cube_count() const;
  std::vector<std::vector<DyadicInterval>> cube_lists() const;

  // Rebuilds per-cube data from f for a bare list of cubes (e.g. loaded from
  // JSON or tampered with).
  static LernerDecomposition from_cubes(const StepFunction& f, const DyadicInterval& root,
                                        const std::vector<std::vector<DyadicInterval>>& cubes);
};

inline constexpr double kSharpLambda = 0.25;
inline constexpr double kOscillationLambda = 0.125;  // 2^{-(n+2)}, n = 1
inline constexpr double kSharpConstant = 4.0;
inline constexpr double kSumConstant = 4.0;

LernerDecomposition decompose(const StepFunction& f, const DyadicInterval& q0);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::optional<std::size_t> counterexample_cell;
  std::string detail;
};

struct VerificationReport {
  std::vector<PropertyCheck> checks;
  // max over cells of |f - m| / RHS (0 when both vanish); the least uniform
  // scaling of the right-hand side that still dominates.
  double least_scaling = 0.0;

  bool passed() const;
  const PropertyCheck* first_failure() const;
};

// Never throws on a malformed decomposition; every violation is reported.
VerificationReport verify_decomposition(const StepFunction& f, const LernerDecomposition& dec);

// 4 M^{#,d}_{lambda_sharp,Q0} f + 4 sum omega_{lambda_osc}(f, parent(Q)) chi_Q.
StepFunction oscillation_rhs(const StepFunction& f, const LernerDecomposition& dec,
                             double lambda_sharp = kSharpLambda,
                             double lambda_osc = kOscillationLambda);

struct Domination {
  StepFunction mf_part;  // dyadic maximal function of f
  StepFunction F_part;   // sum of averages of |f| over (parent Q)^tau on each Q
  double empirical_constant = 0.0;
  LernerDecomposition decomposition;
};

// Least C with |H f - m_{Hf}(Q0)| <= C (M f + F) on every cell of Q0.
Domination shift_domination(const StepFunction& f, const HaarShiftSpec& spec,
                            const DyadicInterval& q0);

}  // namespace dyadic
