#include "dyadic/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "dyadic/haar.hpp"
#include "dyadic/interval.hpp"

namespace dyadic::reference {

double rearrangement(std::span<const double> values, double cell_measure, double s) {
  std::vector<double> candidates{0.0};
  for (double v : values) candidates.push_back(std::fabs(v));
  std::sort(candidates.begin(), candidates.end());
  for (double t : candidates) {
    std::size_t above = 0;
    for (double v : values) above += std::fabs(v) > t;
    if (cell_measure * static_cast<double>(above) <= s) return t;
  }
  return candidates.back();
}

MedianInterval median_interval(std::span<const double> values) {
  const double half = static_cast<double>(values.size()) / 2.0;
  bool found = false;
  MedianInterval out;
  for (double c : values) {
    std::size_t above = 0, below = 0;
    for (double v : values) {
      above += v > c;
      below += v < c;
    }
    if (static_cast<double>(above) > half || static_cast<double>(below) > half) continue;
    if (!found) {
      out = {c, c};
      found = true;
    }
    out.low = std::min(out.low, c);
    out.high = std::max(out.high, c);
  }
  return out;
}

double oscillation(std::span<const double> values, double lambda) {
  const double m = static_cast<double>(values.size());
  const double h = 1.0 / m;
  std::vector<double> centers(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      centers.push_back(values[i] / 2 + values[j] / 2);
  std::vector<double> shifted(values.size());
  double best = INFINITY;
  for (double c : centers) {
    for (std::size_t i = 0; i < values.size(); ++i) shifted[i] = values[i] - c;
    best = std::min(best, rearrangement(shifted, h, lambda));
  }
  return best;
}

namespace {

StepFunction maximal(const StepFunction& f, const StepFunction* sigma) {
  std::vector<double> out(f.size(), 0.0);
  for (int level = 0; level <= f.depth(); ++level) {
    const std::size_t width = f.size() >> level;
    for (std::size_t start = 0; start < f.size(); start += width) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = start; i < start + width; ++i) {
        const double s = sigma ? (*sigma)[i] : 1.0;
        num += std::fabs(f[i]) * s;
        den += s;
      }
      for (std::size_t i = start; i < start + width; ++i) out[i] = std::max(out[i], num / den);
    }
  }
  return StepFunction(f.depth(), std::move(out));
}

}  // namespace

StepFunction dyadic_maximal(const StepFunction& f) { return maximal(f, nullptr); }

StepFunction weighted_dyadic_maximal(const StepFunction& f, const StepFunction& sigma) {
  return maximal(f, &sigma);
}

double ap_constant(const StepFunction& w, double p) {
  const double dual_exponent = -1.0 / (p - 1.0);
  double best = 0.0;
  for (int level = 0; level <= w.depth(); ++level) {
    const std::size_t width = w.size() >> level;
    for (std::size_t start = 0; start < w.size(); start += width) {
      double a = 0.0, b = 0.0;
      for (std::size_t i = start; i < start + width; ++i) {
        a += w[i];
        b += p == 2.0 ? 1.0 / w[i] : std::pow(w[i], dual_exponent);
      }
      a /= static_cast<double>(width);
      b /= static_cast<double>(width);
      best = std::max(best, a * std::pow(b, p - 1.0));
    }
  }
  return best;
}

double haar_gram_error(int depth) {
  const std::size_t n = std::size_t{1} << depth;
  Eigen::MatrixXd basis(n, n);
  basis.col(0).setOnes();
  std::size_t col = 1;
  for (int level = 0; level < depth; ++level) {
    for (std::int64_t i = 0; i < (std::int64_t{1} << level); ++i, ++col) {
      const StepFunction h = haar_function({level, i}, depth);
      for (std::size_t r = 0; r < n; ++r) basis(r, col) = h[r];
    }
  }
  const Eigen::MatrixXd gram = basis.transpose() * basis / static_cast<double>(n);
  return (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace dyadic::reference
