#include "dyadic/lerner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dyadic/error.hpp"
#include "dyadic/rearrangement.hpp"
#include "dyadic/weighted.hpp"

namespace dyadic {

std::size_t LernerDecomposition::cube_count() const {
  std::size_t total = 0;
  for (const auto& g : generations) total += g.size();
  return total;
}

std::vector<std::vector<DyadicInterval>> LernerDecomposition::cube_lists() const {
  std::vector<std::vector<DyadicInterval>> lists;
  for (const auto& g : generations) {
    auto& list = lists.emplace_back();
    for (const StoppingCube& c : g) list.push_back(c.cube);
  }
  return lists;
}

namespace {

StoppingCube describe(const StepFunction& f, const DyadicInterval& cube) {
  StoppingCube c{cube, median(f, cube), 0.0};
  if (cube.level >= 1)
    c.parent_oscillation =
        local_mean_oscillation(f, parent(cube), kOscillationLambda).value;
  return c;
}

// Maximal dyadic Q inside `p` with |Q ∩ E| > |Q|/2, where E is given by a
// per-cell mask over p's cells.
void maximal_dense_cubes(const std::vector<int>& prefix, const DyadicInterval& p,
                         const DyadicInterval& q, int depth,
                         std::vector<DyadicInterval>& out) {
  const std::size_t span = std::size_t{1} << (depth - q.level);
  const std::size_t lo = static_cast<std::size_t>(q.index - (p.index << (q.level - p.level))) * span;
  const int hits = prefix[lo + span] - prefix[lo];
  if (hits == 0) return;
  if (2 * static_cast<std::size_t>(hits) > span) {
    out.push_back(q);
    return;
  }
  maximal_dense_cubes(prefix, p, q.left_child(), depth, out);
  maximal_dense_cubes(prefix, p, q.right_child(), depth, out);
}

std::vector<DyadicInterval> children_of(const StepFunction& f, const DyadicInterval& p) {
  const auto cells = f.cells_of(p);
  const double m = median_interval_of(cells).low;
  std::vector<double> centred(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) centred[i] = cells[i] - m;
  const double level = rearrangement_of(centred, f.cell_width(), p.length() / 8.0);
  std::vector<int> prefix(cells.size() + 1, 0);
  for (std::size_t i = 0; i < cells.size(); ++i)
    prefix[i + 1] = prefix[i] + (std::fabs(centred[i]) > level ? 1 : 0);
  std::vector<DyadicInterval> out;
  maximal_dense_cubes(prefix, p, p, f.depth(), out);
  return out;
}

}  // namespace

LernerDecomposition LernerDecomposition::from_cubes(
    const StepFunction& f, const DyadicInterval& root,
    const std::vector<std::vector<DyadicInterval>>& cubes) {
  LernerDecomposition dec{root, {}};
  for (const auto& list : cubes) {
    auto& g = dec.generations.emplace_back();
    for (const DyadicInterval& q : list) g.push_back(describe(f, q));
  }
  return dec;
}

LernerDecomposition decompose(const StepFunction& f, const DyadicInterval& q0) {
  f.cell_range(q0);  // validates q0 against the grid
  LernerDecomposition dec{q0, {}};
  std::vector<DyadicInterval> current{q0};
  while (true) {
    std::vector<DyadicInterval> next;
    for (const DyadicInterval& p : current) {
      auto kids = children_of(f, p);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    if (next.empty()) break;
    auto& g = dec.generations.emplace_back();
    for (const DyadicInterval& q : next) g.push_back(describe(f, q));
    current = std::move(next);
  }
  return dec;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* VerificationReport::first_failure() const {
  for (const PropertyCheck& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

StepFunction oscillation_rhs(const StepFunction& f, const LernerDecomposition& dec,
                             double lambda_sharp, double lambda_osc) {
  const StepFunction sharp = local_sharp_maximal_dyadic(f, dec.root, lambda_sharp);
  std::vector<double> rhs(f.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = kSharpConstant * sharp[i];
  for (const auto& g : dec.generations) {
    for (const StoppingCube& c : g) {
      const double omega = local_mean_oscillation(f, parent(c.cube), lambda_osc).value;
      const auto [lo, hi] = f.cell_range(c.cube);
      for (std::size_t i = lo; i < hi; ++i) rhs[i] += kSumConstant * omega;
    }
  }
  return StepFunction(f.depth(), std::move(rhs));
}

namespace {

PropertyCheck failure(std::string name, std::size_t cell, std::string detail) {
  return {std::move(name), false, cell, std::move(detail)};
}

bool well_formed(const StepFunction& f, const DyadicInterval& root, const DyadicInterval& q) {
  return q.level > root.level && q.level <= f.depth() && root.contains(q);
}

}  // namespace

VerificationReport verify_decomposition(const StepFunction& f, const LernerDecomposition& dec) {
  VerificationReport report;
  const std::size_t n = f.size();
  const int depth = f.depth();

  // Structure first: every later check indexes cells through the cubes.
  PropertyCheck structure{"cubes_inside_root", true, std::nullopt, ""};
  if (dec.root.level < 0 || dec.root.level > depth || dec.root.index < 0 ||
      dec.root.index >= (std::int64_t{1} << dec.root.level)) {
    structure = failure("cubes_inside_root", 0, "root " + dec.root.str() + " is not on the grid");
  }
  for (const auto& g : dec.generations)
    for (const StoppingCube& c : g)
      if (structure.passed && !well_formed(f, dec.root, c.cube))
        structure = {"cubes_inside_root", false, std::nullopt,
                     "cube " + c.cube.str() + " is not a proper dyadic subcube of the root"};
  report.checks.push_back(structure);
  if (!structure.passed) return report;

  const std::size_t generations = dec.generations.size();
  // cover[k][i]: how many generation-k cubes contain cell i.
  std::vector<std::vector<int>> cover(generations, std::vector<int>(n, 0));
  for (std::size_t k = 0; k < generations; ++k)
    for (const StoppingCube& c : dec.generations[k]) {
      const auto [lo, hi] = f.cell_range(c.cube);
      for (std::size_t i = lo; i < hi; ++i) ++cover[k][i];
    }

  PropertyCheck disjoint{"generation_disjointness", true, std::nullopt, ""};
  for (std::size_t k = 0; k < generations && disjoint.passed; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (cover[k][i] > 1) {
        disjoint = failure("generation_disjointness", i,
                           "generation " + std::to_string(k + 1) + " overlaps at cell " +
                               std::to_string(i));
        break;
      }
  report.checks.push_back(disjoint);

  PropertyCheck nesting{"nesting", true, std::nullopt, ""};
  for (std::size_t k = 0; k + 1 < generations && nesting.passed; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (cover[k + 1][i] > 0 && cover[k][i] == 0) {
        nesting = failure("nesting", i,
                          "Omega_" + std::to_string(k + 2) + " not inside Omega_" +
                              std::to_string(k + 1) + " at cell " + std::to_string(i));
        break;
      }
  report.checks.push_back(nesting);

  PropertyCheck half{"half_measure", true, std::nullopt, ""};
  PropertyCheck e_measure{"exceptional_set_measure", true, std::nullopt, ""};
  PropertyCheck e_disjoint{"exceptional_set_disjointness", true, std::nullopt, ""};
  std::vector<int> e_cover(n, 0);
  for (std::size_t k = 0; k < generations; ++k) {
    for (const StoppingCube& c : dec.generations[k]) {
      const auto [lo, hi] = f.cell_range(c.cube);
      std::size_t inside_next = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        const bool in_next = k + 1 < generations && cover[k + 1][i] > 0;
        if (in_next) {
          ++inside_next;
        } else if (++e_cover[i] > 1 && e_disjoint.passed) {
          e_disjoint = failure("exceptional_set_disjointness", i,
                               "two sets E_j^k share cell " + std::to_string(i));
        }
      }
      const std::size_t size = hi - lo;
      if (2 * inside_next > size && half.passed)
        half = failure("half_measure", lo,
                       "|Omega_{k+1} ∩ Q| > |Q|/2 for Q = " + c.cube.str() +
                           " in generation " + std::to_string(k + 1));
      if (2 * (size - inside_next) < size && e_measure.passed)
        e_measure = failure("exceptional_set_measure", lo,
                            "|E| < |Q|/2 for Q = " + c.cube.str());
    }
  }
  report.checks.push_back(half);
  report.checks.push_back(e_disjoint);
  report.checks.push_back(e_measure);

  // Pointwise bound, for both ends of the admissible median interval.
  const StepFunction rhs = oscillation_rhs(f, dec);
  const MedianInterval medians = median_interval(f, dec.root);
  const auto [lo, hi] = f.cell_range(dec.root);
  double scale = 1.0;
  for (std::size_t i = lo; i < hi; ++i) scale = std::max(scale, std::fabs(f[i]));
  const double slack = 1e-12 * scale;
  PropertyCheck pointwise{"pointwise_bound", true, std::nullopt, ""};
  for (double m : {medians.low, medians.high}) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double lhs = std::fabs(f[i] - m);
      if (rhs[i] > 0.0)
        report.least_scaling = std::max(report.least_scaling, lhs / rhs[i]);
      else if (lhs > 0.0)
        report.least_scaling = std::numeric_limits<double>::infinity();
      if (lhs > rhs[i] + slack && pointwise.passed)
        pointwise = failure("pointwise_bound", i,
                            "|f - m| = " + std::to_string(lhs) + " exceeds " +
                                std::to_string(rhs[i]) + " at cell " + std::to_string(i));
    }
  }
  report.checks.push_back(pointwise);
  return report;
}

Domination shift_domination(const StepFunction& f, const HaarShiftSpec& spec,
                            const DyadicInterval& q0) {
  const StepFunction g = apply_shift(spec, f);
  LernerDecomposition dec = decompose(g, q0);
  const StepFunction mf = dyadic_maximal(f);
  const StepFunction mag = abs(f);

  // P = (parent Q)^tau, zero-padded above the root.
  std::vector<double> big_f(f.size(), 0.0);
  for (const auto& gen : dec.generations) {
    for (const StoppingCube& c : gen) {
      const DyadicInterval p = ancestor(parent(c.cube), spec.tau, spec.tau + 1);
      const double avg = average(mag, p);
      const auto [lo, hi] = f.cell_range(c.cube);
      for (std::size_t i = lo; i < hi; ++i) big_f[i] += avg;
    }
  }
  StepFunction F(f.depth(), std::move(big_f));

  const double m = median(g, q0);
  const auto [lo, hi] = f.cell_range(q0);
  double constant = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double lhs = std::fabs(g[i] - m);
    const double rhs = mf[i] + F[i];
    if (rhs > 0.0) {
      constant = std::max(constant, lhs / rhs);
    } else if (lhs > 0.0) {
      fail(Errc::DegenerateDomination,
           "M f + F vanishes at cell " + std::to_string(i) + " where |Hf - m| = " +
               std::to_string(lhs));
    }
  }
  return {mf, std::move(F), constant, std::move(dec)};
}

}  // namespace dyadic
