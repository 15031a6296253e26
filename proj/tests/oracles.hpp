#pragma once

// Independent reference computations for the tests. Deliberately naive.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "dyadic/interval.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/step_function.hpp"

namespace oracle {

using dyadic::DyadicInterval;
using dyadic::StepFunction;

// Cells of I at depth D: [first, last).
inline std::pair<std::size_t, std::size_t> span_of(const DyadicInterval& i, int depth) {
  const std::size_t width = std::size_t{1} << (depth - i.level);
  return {static_cast<std::size_t>(i.index) * width, static_cast<std::size_t>(i.index + 1) * width};
}

// <f, h_I> from the definition: |I|^{-1/2} (int_{left} f - int_{right} f).
inline double haar_coefficient(const StepFunction& f, const DyadicInterval& i) {
  const auto [lo, hi] = span_of(i, f.depth());
  const std::size_t mid = (lo + hi) / 2;
  double left = 0.0, right = 0.0;
  for (std::size_t k = lo; k < mid; ++k) left += f[k];
  for (std::size_t k = mid; k < hi; ++k) right += f[k];
  return std::pow(2.0, i.level / 2.0) * (left - right) * std::ldexp(1.0, -f.depth());
}

// Value of h_I on cell k of a depth-D grid.
inline double haar_value(const DyadicInterval& i, int depth, std::size_t k) {
  const auto [lo, hi] = span_of(i, depth);
  if (k < lo || k >= hi) return 0.0;
  const double height = std::pow(2.0, i.level / 2.0);
  return k < (lo + hi) / 2 ? height : -height;
}

// sum over kept entries of a <f, h_{Q'}> h_{Q''}, entry by entry.
inline StepFunction apply_shift(const dyadic::HaarShiftSpec& spec, const StepFunction& f) {
  std::vector<double> out(f.size(), 0.0);
  const int max_level = f.depth() - 1 - spec.tau;
  for (const auto& e : spec.entries) {
    if (e.q.level > max_level) continue;
    const double c = e.a * haar_coefficient(f, e.qp);
    for (std::size_t k = 0; k < f.size(); ++k) out[k] += c * haar_value(e.qpp, f.depth(), k);
  }
  return StepFunction(f.depth(), std::move(out));
}

// inf{t >= 0 : measure{|v| > t} <= s}: bisection-free scan over candidate t.
inline double rearrangement(const std::vector<double>& v, double cell, double s) {
  std::vector<double> t{0.0};
  for (double x : v) t.push_back(std::fabs(x));
  std::sort(t.begin(), t.end());
  for (double c : t) {
    double m = 0.0;
    for (double x : v)
      if (std::fabs(x) > c) m += cell;
    if (m <= s) return c;
  }
  return t.back();
}

// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& g, double a, double b,
                        double tol = 1e-13, int depth = 50) {
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) {
        const double mid = (lo + hi) / 2;
        const double lm = (lo + mid) / 2, rm = (mid + hi) / 2;
        const double flm = g(lm), frm = g(rm);
        const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
        const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
        if (d <= 0 || std::fabs(left + right - whole) <= 15 * tol)
          return left + right + (left + right - whole) / 15;
        return rec(lo, mid, flo, flm, fmid, left, d - 1) + rec(mid, hi, fmid, frm, fhi, right, d - 1);
      };
  const double fa = g(a), fb = g(b), fm = g((a + b) / 2);
  return rec(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), depth);
}

// Principal value (1/pi) p.v. int_a^b dy / (x - y); symmetric excision when x
// lies inside (a, b).
inline double hilbert_indicator_pv(double a, double b, double x) {
  auto kernel = [x](double y) { return 1.0 / (x - y); };
  double total = 0.0;
  if (x <= a || x >= b) {
    total = integrate(kernel, a, b);
  } else {
    const double r = std::min(x - a, b - x);
    // The symmetric part over (x - r, x + r) cancels exactly.
    if (x - r > a) total += integrate(kernel, a, x - r);
    if (x + r < b) total += integrate(kernel, x + r, b);
  }
  return total / std::numbers::pi;
}

}  // namespace oracle
