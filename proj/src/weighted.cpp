#include "dyadic/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include "dyadic/error.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/random.hpp"

namespace dyadic {
namespace {

void require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    fail(Errc::BadExponent, "exponent p must be > 1, got " + std::to_string(p));
}

double product_from_sums(double w_sum, double dual_sum, double count, double p) {
  const double dual_avg = dual_sum / count;
  return (w_sum / count) * (p == 2.0 ? dual_avg : std::pow(dual_avg, p - 1.0));
}

double dot(std::span<const double> x, std::span<const double> y) {
  std::vector<double> prod(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) prod[i] = x[i] * y[i];
  return pairwise_sum(prod);
}

}  // namespace

StepFunction dual_weight(const StepFunction& w, double p) {
  require_exponent(p);
  require_weight(w);
  if (p == 2.0) return reciprocal(w);
  const double exponent = -1.0 / (p - 1.0);
  std::vector<double> cells(w.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = std::pow(w[i], exponent);
  return StepFunction(w.depth(), std::move(cells));
}

double ap_product(const StepFunction& w, double p, const DyadicInterval& interval) {
  const StepFunction dual = dual_weight(w, p);
  const double count = static_cast<double>(w.cells_of(interval).size());
  return product_from_sums(pairwise_sum(w.cells_of(interval)),
                           pairwise_sum(dual.cells_of(interval)), count, p);
}

ApReport ap_constant(const StepFunction& w, double p) {
  const StepFunction dual = dual_weight(w, p);
  const LevelSums w_sums(w);
  const LevelSums dual_sums(dual);
  ApReport report{p, 0.0, DyadicInterval::root(), w.depth()};
  for (int level = 0; level <= w.depth(); ++level) {
    const double count = std::ldexp(1.0, w.depth() - level);
    const auto ws = w_sums.level(level);
    const auto ds = dual_sums.level(level);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const double value = product_from_sums(ws[i], ds[i], count, p);
      if (value > report.constant)
        report = {p, value, {level, static_cast<std::int64_t>(i)}, w.depth()};
    }
  }
  return report;
}

namespace {

template <bool Parallel>
StepFunction chain_max_of(std::span<const double> num_cells, std::span<const double> den_cells,
                          int depth) {
  std::vector<double> num(2 * num_cells.size() - 1), den(num.size());
  std::vector<double> out(num_cells.size());
  if constexpr (Parallel) {
    kernels::parallel::level_sums(num_cells, num);
    kernels::parallel::level_sums(den_cells, den);
    kernels::parallel::chain_max(num, den, depth, out);
  } else {
    kernels::serial::level_sums(num_cells, num);
    kernels::serial::level_sums(den_cells, den);
    kernels::serial::chain_max(num, den, depth, out);
  }
  return StepFunction(depth, std::move(out));
}

template <bool Parallel>
StepFunction dyadic_maximal_impl(const StepFunction& f) {
  const StepFunction mag = abs(f);
  const std::vector<double> ones(f.size(), 1.0);
  return chain_max_of<Parallel>(mag.cells(), ones, f.depth());
}

template <bool Parallel>
StepFunction weighted_dyadic_maximal_impl(const StepFunction& f, const StepFunction& sigma) {
  require_weight(sigma);
  if (f.depth() != sigma.depth())
    fail(Errc::DepthMismatch, "function and weight depths differ");
  std::vector<double> num(f.size());
  for (std::size_t i = 0; i < num.size(); ++i) num[i] = std::fabs(f[i]) * sigma[i];
  return chain_max_of<Parallel>(num, sigma.cells(), f.depth());
}

}  // namespace

StepFunction dyadic_maximal(const StepFunction& f) { return dyadic_maximal_impl<true>(f); }

StepFunction weighted_dyadic_maximal(const StepFunction& f, const StepFunction& sigma) {
  return weighted_dyadic_maximal_impl<true>(f, sigma);
}

namespace serial {
StepFunction dyadic_maximal(const StepFunction& f) { return dyadic_maximal_impl<false>(f); }
StepFunction weighted_dyadic_maximal(const StepFunction& f, const StepFunction& sigma) {
  return weighted_dyadic_maximal_impl<false>(f, sigma);
}
}  // namespace serial

double weighted_lp_norm(const StepFunction& f, const StepFunction& w, double p) {
  if (f.depth() != w.depth()) fail(Errc::DepthMismatch, "function and weight depths differ");
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = std::pow(std::fabs(f[i]), p) * w[i];
  return std::pow(pairwise_sum(terms) * f.cell_width(), 1.0 / p);
}

std::string_view method_name(NormMethod method) {
  return method == NormMethod::DenseSingularValue ? "dense-singular-value"
                                                  : "power-iteration";
}

namespace {

NormReport dense_norm(const HaarShiftSpec& spec, const StepFunction& w, int depth) {
  Eigen::MatrixXd a = assemble_matrix(spec, depth);
  const std::size_t n = w.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double right = 1.0 / std::sqrt(w[j]);
    for (std::size_t i = 0; i < n; ++i) a(i, j) *= std::sqrt(w[i]) * right;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const double value = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return {value, NormMethod::DenseSingularValue, 0, 0.0, depth};
}

// Power iteration on B^T B with B = W^{1/2} H W^{-1/2}, applied matrix-free.
NormReport power_norm(const HaarShiftSpec& spec, const StepFunction& w, int depth,
                      const PowerIterationOptions& options) {
  const TruncationPolicy policy = TruncationPolicy::for_spec(spec, depth);
  const CompiledShift forward = compile_shift(spec, policy);
  const CompiledShift backward = compile_shift(adjoint_spec(spec), policy);
  const std::size_t n = w.size();
  std::vector<double> root_w(n), inv_root_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    root_w[i] = std::sqrt(w[i]);
    inv_root_w[i] = 1.0 / root_w[i];
  }

  std::vector<double> coeff_in(n - 1), coeff_out(n - 1), scratch;
  auto apply = [&](const CompiledShift& op, std::span<const double> pre,
                   std::span<const double> post, std::span<const double> x,
                   std::span<double> y) {
    std::vector<double> tmp(n);
    kernels::parallel::scale(x, pre, tmp);
    kernels::parallel::haar_analyze(tmp, coeff_in, scratch);
    kernels::parallel::apply_compiled(op, coeff_in, coeff_out);
    kernels::parallel::haar_synthesize(0.0, coeff_out, tmp, scratch);
    kernels::parallel::scale(tmp, post, y);
  };

  Rng rng(options.seed);
  std::vector<double> v(n), u(n), y(n);
  for (double& x : v) x = 1.0 + rng.uniform(-0.5, 0.5);
  double norm_v = std::sqrt(dot(v, v));
  for (double& x : v) x /= norm_v;

  NormReport report{0.0, NormMethod::PowerIteration, 0, 0.0, depth};
  double previous = -1.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    apply(forward, inv_root_w, root_w, v, u);
    apply(backward, root_w, inv_root_w, u, y);
    const double theta = dot(u, u);
    const double sigma = std::sqrt(theta);
    report.iterations = it;
    report.value = sigma;
    if (theta == 0.0) {
      report.residual = 0.0;
      return report;
    }
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = y[i] - theta * v[i];
    report.residual = std::sqrt(dot(r, r)) / theta;
    const double norm_y = std::sqrt(dot(y, y));
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / norm_y;
    if (previous >= 0.0 && std::fabs(sigma - previous) <= options.tolerance * sigma)
      return report;
    previous = sigma;
  }
  fail(Errc::NoConvergence, "power iteration did not reach relative change " +
                                std::to_string(options.tolerance) + " in " +
                                std::to_string(options.max_iterations) +
                                " iterations (residual " + std::to_string(report.residual) +
                                ")");
}

}  // namespace

NormReport weighted_operator_norm(const HaarShiftSpec& spec, const StepFunction& w,
                                  int depth, NormMethod method,
                                  const PowerIterationOptions& options) {
  if (w.depth() != depth)
    fail(Errc::DepthMismatch, "weight depth " + std::to_string(w.depth()) +
                                  " differs from requested depth " + std::to_string(depth));
  require_weight(w);
  if (method == NormMethod::DenseSingularValue) return dense_norm(spec, w, depth);
  return power_norm(spec, w, depth, options);
}

namespace {

double maximal_ratio(const StepFunction& f, const StepFunction& w) {
  const double denom = weighted_lp_norm(f, w, 2.0);
  if (!(denom > 0.0)) return 0.0;
  return weighted_lp_norm(dyadic_maximal(f), w, 2.0) / denom;
}

}  // namespace

double maximal_weighted_norm_lb(const StepFunction& w, int trials, std::uint64_t seed,
                                const MaximalProbeOptions& options) {
  if (trials < 1) fail(Errc::InvalidArgument, "trials must be >= 1");
  require_weight(w);
  const StepFunction sigma = reciprocal(w);
  const int depth = w.depth();
  const std::size_t n = w.size();

  // Extremal family: sigma restricted to each dyadic interval.
  std::vector<double> best_cells(sigma.cells().begin(), sigma.cells().end());
  double best = maximal_ratio(sigma, w);
  for (int level = 1; level <= depth; ++level) {
    for (std::int64_t i = 0; i < (std::int64_t{1} << level); ++i) {
      std::vector<double> cells(n, 0.0);
      const auto [lo, hi] = sigma.cell_range({level, i});
      std::copy(sigma.cells().begin() + lo, sigma.cells().begin() + hi, cells.begin() + lo);
      const double r = maximal_ratio(StepFunction(depth, cells), w);
      if (r > best) {
        best = r;
        best_cells = std::move(cells);
      }
    }
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> cells(n);
    const bool weighted = rng.chance(0.5);
    const double sparsity = rng.uniform(0.0, 0.9);
    for (std::size_t i = 0; i < n; ++i) {
      cells[i] = rng.chance(sparsity) ? 0.0 : rng.uniform();
      if (weighted) cells[i] *= sigma[i];
    }
    if (std::all_of(cells.begin(), cells.end(), [](double v) { return v == 0.0; }))
      cells[rng.below(n)] = 1.0;
    const double r = maximal_ratio(StepFunction(depth, cells), w);
    if (r > best) {
      best = r;
      best_cells = std::move(cells);
    }
  }

  // Greedy coordinate ascent from the best candidate.
  static constexpr double kFactors[] = {2.0, 0.5, 0.0};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int pass = 0; pass < options.ascent_passes; ++pass) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    bool improved = false;
    for (std::size_t idx : order) {
      const double original = best_cells[idx];
      for (double factor : kFactors) {
        best_cells[idx] = factor == 0.0 ? 0.0 : (original > 0.0 ? original * factor : sigma[idx]);
        if (best_cells[idx] == original) continue;
        bool any = false;
        for (double v : best_cells) any = any || v > 0.0;
        const double r = any ? maximal_ratio(StepFunction(depth, best_cells), w) : 0.0;
        if (r > best) {
          best = r;
          improved = true;
          break;
        }
        best_cells[idx] = original;
      }
    }
    if (!improved) break;
  }
  return best;
}

StepFunction power_weight(double alpha, int depth) {
  if (!(alpha > -1.0 && alpha < 1.0))
    fail(Errc::BadExponent, "power weight exponent must lie in (-1, 1), got " +
                                std::to_string(alpha));
  if (alpha == 0.0) return StepFunction::constant(depth, 1.0);
  const std::size_t n = std::size_t{1} << depth;
  const double s = alpha + 1.0;
  const double width = std::ldexp(1.0, -depth);
  std::vector<double> cells(n);
  // (b^s - a^s) / (s (b - a)) with a = i h, b = (i+1) h; for i >= 1 written as
  // a^s expm1(s log1p(1/i)) to avoid cancellation.
  cells[0] = std::pow(width, s) / (s * width);
  for (std::size_t i = 1; i < n; ++i) {
    const double a = static_cast<double>(i) * width;
    const double diff = std::pow(a, s) * std::expm1(s * std::log1p(1.0 / static_cast<double>(i)));
    cells[i] = diff / (s * width);
  }
  return StepFunction(depth, std::move(cells));
}

}  // namespace dyadic
