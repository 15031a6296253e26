#include "dyadic/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dyadic/error.hpp"
#include "dyadic/random.hpp"
#include "dyadic/rearrangement.hpp"

namespace dyadic {
namespace {

// 2^{n/2} for any integer n.
double half_power_of_two(int n) {
  const int whole = n >= 0 ? n / 2 : -((-n + 1) / 2);
  const double base = std::ldexp(1.0, whole);
  return (n - 2 * whole) == 1 ? base * std::sqrt(2.0) : base;
}

bool inside_root(const DyadicInterval& i) {
  return i.level >= 0 && i.index >= 0 && i.index < (std::int64_t{1} << i.level);
}

}  // namespace

double HaarShiftSpec::admissible_bound(double bound_constant, const ShiftEntry& entry) {
  return bound_constant *
         half_power_of_two(2 * entry.q.level - entry.qp.level - entry.qpp.level);
}

void HaarShiftSpec::validate() const {
  if (tau < 0) fail(Errc::AdmissibilityViolation, "tau must be >= 0");
  if (!(bound_constant > 0.0) || !std::isfinite(bound_constant))
    fail(Errc::AdmissibilityViolation, "bound constant must be positive and finite");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const ShiftEntry& e = entries[k];
    const std::string where = "entry " + std::to_string(k) + " (Q=" + e.q.str() +
                              ", Q'=" + e.qp.str() + ", Q''=" + e.qpp.str() + ")";
    if (!inside_root(e.q) || !inside_root(e.qp) || !inside_root(e.qpp))
      fail(Errc::AdmissibilityViolation, where + " leaves the root");
    if (!e.q.contains(e.qp) || !e.q.contains(e.qpp))
      fail(Errc::AdmissibilityViolation, where + ": Q', Q'' must lie inside Q");
    if (e.qp.level - e.q.level > tau || e.qpp.level - e.q.level > tau)
      fail(Errc::AdmissibilityViolation, where + " is more than tau generations below Q");
    if (!std::isfinite(e.a))
      fail(Errc::AdmissibilityViolation, where + " has a non-finite coefficient");
    const double bound = admissible_bound(bound_constant, e);
    if (std::fabs(e.a) > bound * (1.0 + 1e-12))
      fail(Errc::AdmissibilityViolation,
           where + ": |a| = " + std::to_string(std::fabs(e.a)) + " exceeds " +
               std::to_string(bound));
  }
}

CompiledShift compile_shift(const HaarShiftSpec& spec, const TruncationPolicy& policy) {
  spec.validate();
  if (policy.depth < 0 || policy.depth > 30)
    fail(Errc::InvalidArgument, "truncation depth out of range");
  if (policy.max_level > policy.depth - 1 - spec.tau)
    fail(Errc::InvalidArgument, "truncation keeps Haar functions finer than the grid");

  const std::size_t slots = (std::size_t{1} << policy.depth) - 1;
  std::vector<std::uint32_t> order;
  for (std::uint32_t k = 0; k < spec.entries.size(); ++k)
    if (spec.entries[k].q.level <= policy.max_level) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return heap_slot(spec.entries[x].qpp) < heap_slot(spec.entries[y].qpp);
  });

  CompiledShift op;
  op.depth = policy.depth;
  op.row_start.assign(slots + 1, 0);
  op.source.reserve(order.size());
  op.coeff.reserve(order.size());
  for (std::uint32_t k : order) {
    const ShiftEntry& e = spec.entries[k];
    ++op.row_start[heap_slot(e.qpp) + 1];
    op.source.push_back(static_cast<std::uint32_t>(heap_slot(e.qp)));
    op.coeff.push_back(e.a);
  }
  std::partial_sum(op.row_start.begin(), op.row_start.end(), op.row_start.begin());
  return op;
}

namespace {

template <bool Parallel>
StepFunction apply_compiled_impl(const CompiledShift& op, const StepFunction& f) {
  if (op.depth != f.depth())
    fail(Errc::DepthMismatch, "operator compiled for depth " + std::to_string(op.depth) +
                                  ", function has depth " + std::to_string(f.depth()));
  std::vector<double> in(op.slots()), out(op.slots()), scratch;
  std::vector<double> cells(f.size());
  if constexpr (Parallel) {
    kernels::parallel::haar_analyze(f.cells(), in, scratch);
    kernels::parallel::apply_compiled(op, in, out);
    kernels::parallel::haar_synthesize(0.0, out, cells, scratch);
  } else {
    kernels::serial::haar_analyze(f.cells(), in, scratch);
    kernels::serial::apply_compiled(op, in, out);
    kernels::serial::haar_synthesize(0.0, out, cells, scratch);
  }
  return StepFunction(f.depth(), std::move(cells));
}

}  // namespace

StepFunction apply_compiled(const CompiledShift& op, const StepFunction& f) {
  return apply_compiled_impl<true>(op, f);
}

namespace serial {
StepFunction apply_compiled(const CompiledShift& op, const StepFunction& f) {
  return apply_compiled_impl<false>(op, f);
}
}  // namespace serial

StepFunction apply_shift(const HaarShiftSpec& spec, const StepFunction& f,
                         const TruncationPolicy& policy) {
  if (policy.depth != f.depth())
    fail(Errc::DepthMismatch, "policy depth " + std::to_string(policy.depth) +
                                  " differs from function depth " +
                                  std::to_string(f.depth()));
  return apply_compiled(compile_shift(spec, policy), f);
}

StepFunction apply_shift(const HaarShiftSpec& spec, const StepFunction& f) {
  return apply_shift(spec, f, TruncationPolicy::for_spec(spec, f.depth()));
}

HaarShiftSpec dyadic_hilbert_spec(int depth) {
  if (depth < 2) fail(Errc::InvalidArgument, "dyadic Hilbert transform needs depth >= 2");
  HaarShiftSpec spec;
  spec.tau = 1;
  spec.bound_constant = std::sqrt(2.0);
  for (int level = 0; level <= depth - 2; ++level) {
    for (std::int64_t i = 0; i < (std::int64_t{1} << level); ++i) {
      const DyadicInterval q{level, i};
      spec.entries.push_back({q, q, q.left_child(), 1.0});
      spec.entries.push_back({q, q, q.right_child(), -1.0});
    }
  }
  return spec;
}

HaarShiftSpec adjoint_spec(const HaarShiftSpec& spec) {
  HaarShiftSpec adj = spec;
  for (ShiftEntry& e : adj.entries) std::swap(e.qp, e.qpp);
  return adj;
}

Eigen::MatrixXd assemble_matrix(const HaarShiftSpec& spec, int depth) {
  if (depth < 0 || (std::size_t{1} << depth) > kMaxDenseCells)
    fail(Errc::DepthTooLarge, "dense assembly limited to " +
                                  std::to_string(kMaxDenseCells) + " cells");
  const CompiledShift op = compile_shift(spec, TruncationPolicy::for_spec(spec, depth));
  const std::size_t n = std::size_t{1} << depth;
  Eigen::MatrixXd m(n, n);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    std::vector<double> e(n, 0.0), in(n - 1), out(n - 1), col(n), scratch;
    e[j] = 1.0;
    kernels::serial::haar_analyze(e, in, scratch);
    kernels::serial::apply_compiled(op, in, out);
    kernels::serial::haar_synthesize(0.0, out, col, scratch);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

double weak11_constant(const HaarShiftSpec& spec, std::span<const StepFunction> fs) {
  double best = 0.0;
  for (const StepFunction& f : fs) {
    const double l1 = integral(abs(f));
    if (!(l1 > 0.0)) fail(Errc::ZeroFunction, "weak (1,1) ratio needs ||f||_1 > 0");
    const StepFunction g = apply_shift(spec, f);
    std::vector<double> mags(g.size());
    std::transform(g.cells().begin(), g.cells().end(), mags.begin(),
                   [](double v) { return std::fabs(v); });
    std::sort(mags.begin(), mags.end(), std::greater<>());
    // As t increases to a distinct value v, |{|Hf| > t}| tends to #{|Hf| >= v}.
    for (std::size_t j = 0; j < mags.size(); ++j) {
      if (j + 1 < mags.size() && mags[j + 1] == mags[j]) continue;
      const double ratio = mags[j] * static_cast<double>(j + 1) * g.cell_width() / l1;
      best = std::max(best, ratio);
    }
  }
  return best;
}

double far_part_spread(const HaarShiftSpec& spec, const StepFunction& f,
                       const DyadicInterval& q0) {
  return far_part_spread(compile_shift(spec, TruncationPolicy::for_spec(spec, f.depth())),
                         spec.tau, f, q0);
}

double far_part_spread(const CompiledShift& op, int tau, const StepFunction& f,
                       const DyadicInterval& q0) {
  const DyadicInterval big = ancestor(q0, tau, tau);
  std::vector<double> outside(f.cells().begin(), f.cells().end());
  if (big.level >= 0) {
    const auto [lo, hi] = f.cell_range(big);
    std::fill(outside.begin() + lo, outside.begin() + hi, 0.0);
  } else {
    std::fill(outside.begin(), outside.end(), 0.0);
  }
  const StepFunction g = apply_compiled(op, StepFunction(f.depth(), std::move(outside)));
  const auto [lo, hi] = f.cell_range(q0);
  const auto [mn, mx] = std::minmax_element(g.cells().begin() + lo, g.cells().begin() + hi);
  return *mx - *mn;
}

double oscillation_ratio(const HaarShiftSpec& spec, const StepFunction& f,
                         const DyadicInterval& q0, double lambda) {
  const StepFunction g = apply_shift(spec, f);
  const double osc = local_mean_oscillation(g, q0, lambda).value;
  const double avg = average(abs(f), ancestor(q0, spec.tau, spec.tau));
  if (avg == 0.0) return osc == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return osc / avg;
}

HaarShiftSpec random_shift_spec(int tau, int depth, double density, double bound_constant,
                                Rng& rng) {
  HaarShiftSpec spec;
  spec.tau = tau;
  spec.bound_constant = bound_constant;
  for (int level = 0; level <= depth - 1 - tau; ++level) {
    for (std::int64_t i = 0; i < (std::int64_t{1} << level); ++i) {
      const DyadicInterval q{level, i};
      std::vector<DyadicInterval> family;
      for (int g = 0; g <= tau; ++g)
        for (std::int64_t k = 0; k < (std::int64_t{1} << g); ++k)
          family.push_back({level + g, (i << g) + k});
      for (const DyadicInterval& qp : family) {
        for (const DyadicInterval& qpp : family) {
          if (!rng.chance(density)) continue;
          ShiftEntry e{q, qp, qpp, 0.0};
          e.a = HaarShiftSpec::admissible_bound(bound_constant, e) * rng.uniform(-1.0, 1.0);
          spec.entries.push_back(e);
        }
      }
    }
  }
  return spec;
}

}  // namespace dyadic
