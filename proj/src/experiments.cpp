#include "dyadic/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dyadic/error.hpp"
#include "dyadic/random.hpp"
#include "dyadic/shift.hpp"

namespace dyadic {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

LpProbe lp_lower_probe(double alpha, double p, int depth) {
  if (!(p > 1.0)) fail(Errc::BadExponent, "probe exponent must be > 1");
  if (depth < 2) fail(Errc::InvalidArgument, "probe needs depth >= 2");
  const StepFunction w = power_weight(alpha, depth);
  const StepFunction dual = dual_weight(w, p);
  const DyadicInterval small{depth - 2, 0};
  const StepFunction f = multiply(dual, StepFunction::indicator(depth, small));
  const StepFunction g = apply_shift(dyadic_hilbert_spec(depth), f);
  return {p, weighted_lp_norm(g, w, p) / weighted_lp_norm(f, w, p), ap_constant(w, p).constant};
}

std::optional<double> loglog_slope(const std::vector<SweepRow>& rows) {
  std::vector<double> xs, ys;
  for (const SweepRow& r : rows) {
    if (r.error || !r.a2_constant || !r.op_norm || *r.a2_constant < 2.0) continue;
    xs.push_back(std::log(*r.a2_constant));
    ys.push_back(std::log(*r.op_norm));
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

namespace {

SweepRow sweep_row(double alpha, const SweepOptions& options, std::uint64_t row_seed) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.alpha = alpha;
  row.depth = options.depth;
  try {
    const StepFunction w = power_weight(alpha, options.depth);
    const HaarShiftSpec hd = dyadic_hilbert_spec(options.depth);
    row.a2_constant = ap_constant(w, 2.0).constant;
    PowerIterationOptions power;
    power.seed = derive_seed(row_seed, 0);
    const NormReport norm =
        weighted_operator_norm(hd, w, options.depth, NormMethod::PowerIteration, power);
    row.op_norm = norm.value;
    row.norm_iterations = norm.iterations;
    row.ratio = norm.value / *row.a2_constant;
    row.maximal_lb = maximal_weighted_norm_lb(w, options.maximal_trials, derive_seed(row_seed, 1));
    if (options.lp_p) row.lp_probe = lp_lower_probe(alpha, *options.lp_p, options.depth);
    if (options.crosscheck_depth > 0) {
      const int d = options.crosscheck_depth;
      const StepFunction wc = power_weight(alpha, d);
      const HaarShiftSpec hc = dyadic_hilbert_spec(d);
      const double dense =
          weighted_operator_norm(hc, wc, d, NormMethod::DenseSingularValue).value;
      const double iter =
          weighted_operator_norm(hc, wc, d, NormMethod::PowerIteration, power).value;
      row.crosscheck_difference = std::fabs(dense - iter) / dense;
    }
  } catch (const Error& e) {
    row.error = std::string(e.name());
  }
  if (options.record_timing)
    row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepOptions& options) {
  if (options.depth < 2 || options.depth > 14)
    fail(Errc::InvalidArgument, "sweep depth must lie in [2, 14]");
  if (options.crosscheck_depth < 0 || options.crosscheck_depth > 12)
    fail(Errc::InvalidArgument, "dense cross-check depth must lie in [0, 12]");
  for (double a : options.alphas)
    if (!(a > -1.0 && a < 1.0))
      fail(Errc::BadExponent, "sweep alpha " + std::to_string(a) + " outside (-1, 1)");

  SweepResult result;
  result.rows.resize(options.alphas.size());
  const std::int64_t count = static_cast<std::int64_t>(options.alphas.size());
  // Rows land in input order whatever the completion order.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i)
    result.rows[i] = sweep_row(options.alphas[i], options, derive_seed(options.seed, i));
  result.slope = loglog_slope(result.rows);
  return result;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "alpha,depth,a2_constant,op_norm,ratio,maximal_lb,lp_p,lp_lower_ratio,runtime_ms\n";
  for (const SweepRow& r : result.rows) {
    out << format_number(r.alpha) << ',' << r.depth << ',' << opt(r.a2_constant) << ',';
    if (r.error)
      out << "ERROR:" << *r.error;
    else
      out << opt(r.op_norm);
    out << ',' << opt(r.ratio) << ',' << opt(r.maximal_lb) << ',';
    if (r.lp_probe)
      out << format_number(r.lp_probe->p) << ',' << format_number(r.lp_probe->lower_ratio);
    else
      out << ',';
    out << ',' << (r.runtime_ms ? std::to_string(*r.runtime_ms) : "") << '\n';
  }
  return out.str();
}

nlohmann::json sweep_json(const SweepResult& result) {
  using nlohmann::json;
  auto opt_json = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    json row{{"alpha", r.alpha},
             {"depth", r.depth},
             {"a2_constant", opt_json(r.a2_constant)},
             {"op_norm", opt_json(r.op_norm)},
             {"ratio", opt_json(r.ratio)},
             {"maximal_lb", opt_json(r.maximal_lb)},
             {"norm_iterations", r.norm_iterations},
             {"crosscheck_difference", opt_json(r.crosscheck_difference)},
             {"runtime_ms", r.runtime_ms ? json(*r.runtime_ms) : json(nullptr)},
             {"error", r.error ? json(*r.error) : json(nullptr)}};
    row["lp_probe"] = r.lp_probe ? json{{"p", r.lp_probe->p},
                                        {"lower_ratio", r.lp_probe->lower_ratio},
                                        {"ap_constant", r.lp_probe->ap_constant}}
                                 : json(nullptr);
    rows.push_back(row);
  }
  return json{{"rows", rows}, {"slope", opt_json(result.slope)}};
}

HilbertComparison hilbert_compare(double a, double b, int shifts, int dilations, int depth,
                                  std::uint64_t seed, const PetermichlOptions& options) {
  if (!(0.0 <= a && a < b && b <= 1.0))
    fail(Errc::InvalidArgument, "need 0 <= a < b <= 1");
  const StepFunction f = indicator_of(a, b, depth);
  const StepFunction averaged = petermichl_average(f, shifts, dilations, seed, options);
  const double width = f.cell_width();
  auto distance = [](double p, double x0, double x1) {
    return p < x0 ? x0 - p : (p > x1 ? p - x1 : 0.0);
  };
  double ab = 0, aa = 0, bb = 0;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x0 = static_cast<double>(i) * width;
    const double x1 = x0 + width;
    if (distance(a, x0, x1) < 4 * width || distance(b, x0, x1) < 4 * width) continue;
    const double exact = hilbert_of_indicator_average(a, b, x0, x1);
    pairs.emplace_back(averaged[i], exact);
    ab += averaged[i] * exact;
    aa += averaged[i] * averaged[i];
    bb += exact * exact;
  }
  HilbertComparison c{a, b, shifts, dilations, depth, 0.0, 0.0, pairs.size()};
  if (pairs.empty() || aa == 0.0 || bb == 0.0)
    fail(Errc::InvalidArgument, "no cells far enough from the jumps to compare");
  c.fitted_scalar = ab / aa;
  double err = 0.0;
  for (const auto& [x, y] : pairs) err += (c.fitted_scalar * x - y) * (c.fitted_scalar * x - y);
  c.relative_error = std::sqrt(err / bb);
  return c;
}

nlohmann::json to_json(const HilbertComparison& c) {
  return {{"a", c.a},
          {"b", c.b},
          {"shifts", c.shifts},
          {"dilations", c.dilations},
          {"depth", c.depth},
          {"fitted_scalar", c.fitted_scalar},
          {"relative_error", c.relative_error},
          {"cells_compared", c.cells_compared}};
}

}  // namespace dyadic
