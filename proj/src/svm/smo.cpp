#include "salesig/svm/smo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "salesig/errors.hpp"

namespace salesig::svm {
namespace {

// Curvature floor for non-PSD kernels (sigmoid) or duplicate points.
constexpr double kTau = 1e-12;
constexpr double kSnap = 1e-13;  // relative distance treated as sitting on a bound

struct WorkingPair {
  std::size_t up = 0;    // argmax over I_up of -y G
  std::size_t low = 0;   // argmin over I_low of -y G
  double m = -std::numeric_limits<double>::infinity();
  double big_m = std::numeric_limits<double>::infinity();
  bool valid() const { return std::isfinite(m) && std::isfinite(big_m); }
  double gap() const { return m - big_m; }
};

// I_up:  y = +1 with alpha < C, or y = -1 with alpha > 0
// I_low: y = +1 with alpha > 0, or y = -1 with alpha < C
bool in_up(int y, double a, double bound) { return y > 0 ? a < bound : a > 0.0; }
bool in_low(int y, double a, double bound) { return y > 0 ? a > 0.0 : a < bound; }

WorkingPair select_pair(std::span<const int> y, const std::vector<double>& alpha,
                        const std::vector<double>& bounds, const std::vector<double>& grad) {
  WorkingPair w;
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    const double v = -y[t] * grad[t];
    if (in_up(y[t], alpha[t], bounds[t]) && v > w.m) {
      w.m = v;
      w.up = t;
    }
    if (in_low(y[t], alpha[t], bounds[t]) && v < w.big_m) {
      w.big_m = v;
      w.low = t;
    }
  }
  return w;
}

double objective_from_gradient(const std::vector<double>& alpha, const std::vector<double>& grad) {
  // With G = Q alpha - e the dual value is -1/2 sum alpha_t (G_t - 1).
  double s = 0.0;
  for (std::size_t t = 0; t < alpha.size(); ++t) s += alpha[t] * (grad[t] - 1.0);
  return -0.5 * s;
}

void check_inputs(const GramMatrix& gram, const std::vector<Point>& points,
                  std::span<const int> labels) {
  if (points.size() < 2) throw ContractError("binary SVM needs at least 2 points");
  if (labels.size() != points.size()) {
    throw ContractError("label count does not match point count");
  }
  if (gram.size() != points.size()) throw ContractError("Gram matrix size does not match points");
  bool pos = false, neg = false;
  for (int y : labels) {
    if (y == 1) {
      pos = true;
    } else if (y == -1) {
      neg = true;
    } else {
      throw ContractError("labels must be +1 or -1");
    }
  }
  if (!pos || !neg) throw ContractError("binary SVM needs both classes present");
}

}  // namespace

SmoResult smo_solve(const GramMatrix& gram, const std::vector<Point>& points,
                    std::span<const int> labels, const KernelConfig& kernel, double c,
                    const SmoOptions& options, double positive_weight,
                    double negative_weight) {
  check_inputs(gram, points, labels);
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("C must be positive");
  if (!(positive_weight > 0.0) || !(negative_weight > 0.0)) {
    throw ConfigError("class weights must be positive");
  }
  if (!(options.tol > 0.0)) throw ConfigError("solver tolerance must be positive");

  const std::size_t n = points.size();
  const std::span<const int> y = labels;
  const std::size_t max_stall = options.max_passes ? options.max_passes : 10 * n;

  SmoResult res;
  res.alpha.assign(n, 0.0);
  res.bounds.resize(n);
  for (std::size_t t = 0; t < n; ++t) res.bounds[t] = c * (y[t] > 0 ? positive_weight : negative_weight);
  std::vector<double> grad(n, -1.0);

  auto& alpha = res.alpha;
  const auto& bounds = res.bounds;

  double best_gap = std::numeric_limits<double>::infinity();
  std::size_t stalled_sweeps = 0;
  std::size_t iter = 0;

  for (;;) {
    const WorkingPair w = select_pair(y, alpha, bounds, grad);
    if (!w.valid() || w.gap() < options.tol) {
      res.converged = true;
      res.gap = w.valid() ? std::max(w.gap(), 0.0) : 0.0;
      break;
    }
    if (iter > 0 && iter % n == 0) {
      if (w.gap() < best_gap) {
        best_gap = w.gap();
        stalled_sweeps = 0;
      } else if (++stalled_sweeps >= max_stall) {
        res.gap = w.gap();
        break;
      }
    }

    const std::size_t i = w.up;
    const std::size_t j = w.low;
    // Move alpha_i by y_i t and alpha_j by -y_j t with t >= 0; the dual
    // along this line has slope (m - M) and curvature K_ii + K_jj - 2 K_ij.
    double curvature = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
    if (curvature <= 0.0) curvature = kTau;
    double step = w.gap() / curvature;
    const double room_i = y[i] > 0 ? bounds[i] - alpha[i] : alpha[i];
    const double room_j = y[j] > 0 ? alpha[j] : bounds[j] - alpha[j];
    bool clip_i = false, clip_j = false;
    if (step >= room_i) {
      step = room_i;
      clip_i = true;
    }
    if (step >= room_j) {
      step = room_j;
      clip_j = true;
      clip_i = clip_i && room_i == room_j;
    }

    const double before = options.observer ? objective_from_gradient(alpha, grad) : 0.0;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    alpha[i] = clip_i ? (y[i] > 0 ? bounds[i] : 0.0) : old_i + y[i] * step;
    alpha[j] = clip_j ? (y[j] > 0 ? 0.0 : bounds[j]) : old_j - y[j] * step;
    alpha[i] = std::clamp(alpha[i], 0.0, bounds[i]);
    alpha[j] = std::clamp(alpha[j], 0.0, bounds[j]);

    // G_t += y_t (y_i dA_i K_ti + y_j dA_j K_tj)
    const double di = y[i] * (alpha[i] - old_i);
    const double dj = y[j] * (alpha[j] - old_j);
    const auto row_i = gram.row(i);
    const auto row_j = gram.row(j);
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * (row_i[t] * di + row_j[t] * dj);

    ++iter;
    if (options.observer) {
      options.observer({iter, i, j, before, objective_from_gradient(alpha, grad)});
    }
  }
  res.iterations = iter;
  // An unclipped step can stop a hair short of a bound; such a point would
  // otherwise count as free and pin the bias on its own.
  for (std::size_t t = 0; t < n; ++t) {
    const double eps = kSnap * bounds[t];
    if (alpha[t] < eps) {
      alpha[t] = 0.0;
    } else if (alpha[t] > bounds[t] - eps) {
      alpha[t] = bounds[t];
    }
  }
  res.objective = objective_from_gradient(alpha, grad);

  // Bias: mean of -y G over free vectors, otherwise the midpoint of the
  // feasible interval [M, m].
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double up_max = -std::numeric_limits<double>::infinity();
  double low_min = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    const double v = -y[t] * grad[t];
    if (alpha[t] > 0.0 && alpha[t] < bounds[t]) {
      free_sum += v;
      ++free_count;
    }
    if (in_up(y[t], alpha[t], bounds[t])) up_max = std::max(up_max, v);
    if (in_low(y[t], alpha[t], bounds[t])) low_min = std::min(low_min, v);
  }
  double bias = 0.0;
  if (free_count > 0) {
    bias = free_sum / static_cast<double>(free_count);
  } else if (std::isfinite(up_max) && std::isfinite(low_min)) {
    bias = 0.5 * (up_max + low_min);
  } else if (std::isfinite(up_max)) {
    bias = up_max;
  } else if (std::isfinite(low_min)) {
    bias = low_min;
  }
  if (!std::isfinite(bias) || !std::isfinite(res.objective)) {
    throw NumericError("SMO produced a non-finite solution");
  }

  auto& m = res.model;
  m.kernel = kernel;
  m.c = c;
  m.positive_weight = positive_weight;
  m.negative_weight = negative_weight;
  m.bias = bias;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      m.support_vectors.push_back(points[t]);
      m.dual_coefs.push_back(alpha[t] * y[t]);
    }
  }
  return res;
}

BinarySvmModel solve_binary(const std::vector<Point>& points, std::span<const int> labels,
                            const KernelConfig& kernel, double c, double tol,
                            std::size_t max_passes) {
  kernel.validate();
  if (points.size() < 2) throw ContractError("binary SVM needs at least 2 points");
  SmoOptions opts;
  opts.tol = tol;
  opts.max_passes = max_passes;
  GramMatrix gram(kernel, points);
  return smo_solve(gram, points, labels, kernel, c, opts).model;
}

double predict_decision(const BinarySvmModel& m, std::span<const double> v) {
  double s = m.bias;
  for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
    s += m.dual_coefs[i] * kernel_eval(m.kernel, m.support_vectors[i], v);
  }
  return s;
}

double dual_objective(const GramMatrix& gram, std::span<const int> labels,
                      std::span<const double> alpha) {
  const std::size_t n = alpha.size();
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    linear += alpha[i];
    for (std::size_t j = 0; j < n; ++j) {
      quad += alpha[i] * alpha[j] * labels[i] * labels[j] * gram(i, j);
    }
  }
  return linear - 0.5 * quad;
}

}  // namespace salesig::svm
