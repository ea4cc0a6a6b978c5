#pragma once

// Small random binary problems for solver property tests.

#include <vector>

#include "salesig/random.hpp"
#include "salesig/svm/kernel.hpp"
#include "salesig/svm/smo.hpp"

namespace problems {

struct Binary {
  std::vector<salesig::svm::Point> points;
  std::vector<int> labels;
  salesig::svm::KernelConfig kernel;
  double c = 1.0;
};

inline Binary random_binary(salesig::Rng& rng, std::size_t max_points, std::size_t max_dims,
                            bool rbf) {
  Binary p;
  const auto n = 2 + rng.index(max_points - 1);
  const auto dims = 1 + rng.index(max_dims);
  p.points.assign(n, salesig::svm::Point(dims));
  for (auto& pt : p.points)
    for (auto& x : pt) x = rng.uniform(-2.0, 2.0);
  p.labels.resize(n);
  for (auto& y : p.labels) y = rng.bernoulli(0.5) ? 1 : -1;
  p.labels[0] = 1;
  p.labels[1] = -1;
  rng.shuffle(p.labels);
  p.kernel = rbf ? salesig::svm::KernelConfig{salesig::svm::KernelKind::Rbf, rng.uniform(0.2, 2.0)}
                 : salesig::svm::KernelConfig{salesig::svm::KernelKind::Linear};
  const double cs[] = {0.1, 1.0, 10.0};
  p.c = cs[rng.index(3)];
  return p;
}

inline std::vector<std::vector<double>> kernel_rows(const Binary& p) {
  const auto n = p.points.size();
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i][j] = salesig::svm::kernel_eval(p.kernel, p.points[i], p.points[j]);
  return k;
}

// Largest breach of the margin conditions, measured with the model's own
// decision function: alpha = 0 needs y f >= 1, alpha = C needs y f <= 1,
// anything in between needs y f = 1.
inline double max_kkt_violation(const salesig::svm::SmoResult& r, const Binary& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const double yf = p.labels[i] * salesig::svm::predict_decision(r.model, p.points[i]);
    const double a = r.alpha[i], c = r.bounds[i];
    double v = 0.0;
    if (a <= 0.0) {
      v = 1.0 - yf;
    } else if (a >= c) {
      v = yf - 1.0;
    } else {
      v = std::abs(yf - 1.0);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

inline double equality_residual(const std::vector<double>& alpha, const std::vector<int>& labels) {
  double s = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i] * labels[i];
  return std::abs(s);
}

}  // namespace problems
