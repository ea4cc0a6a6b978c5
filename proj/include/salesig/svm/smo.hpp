#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "salesig/svm/kernel.hpp"

namespace salesig::svm {

// Soft-margin binary classifier in dual form. Only points with alpha > 0 are
// kept; dual_coefs[i] = alpha_i * y_i.
struct BinarySvmModel {
  std::vector<Point> support_vectors;
  std::vector<double> dual_coefs;
  double bias = 0.0;
  KernelConfig kernel;
  double c = 1.0;
  // Box bound for a point is c * weight of its label.
  double positive_weight = 1.0;
  double negative_weight = 1.0;

  bool operator==(const BinarySvmModel&) const = default;
};

// Reported to SmoOptions::observer after every accepted pair update.
struct SmoStep {
  std::size_t iteration = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double objective_before = 0.0;
  double objective_after = 0.0;
};

struct SmoOptions {
  double tol = 1e-3;
  // Stop after this many consecutive sweeps (N pair updates each) that fail
  // to shrink the violating-pair gap. 0 selects 10 * N.
  std::size_t max_passes = 0;
  // Test hook; computing the objective costs O(N) per step.
  std::function<void(const SmoStep&)> observer;
};

struct SmoResult {
  BinarySvmModel model;
  std::vector<double> alpha;   // full solution, one per training point
  std::vector<double> bounds;  // per-point upper bound
  double objective = 0.0;      // dual objective (maximization form)
  double gap = 0.0;            // final max violating-pair gap
  std::size_t iterations = 0;
  bool converged = false;
};

// Maximizes sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij subject to
// 0 <= alpha_i <= C_i and sum(alpha_i y_i) = 0, updating the maximal
// violating pair analytically at each step.
//
// ContractError: fewer than 2 points, labels not +-1, a single class, or a
// Gram matrix of the wrong size.
SmoResult smo_solve(const GramMatrix& gram, const std::vector<Point>& points,
                    std::span<const int> labels, const KernelConfig& kernel, double c,
                    const SmoOptions& options = {}, double positive_weight = 1.0,
                    double negative_weight = 1.0);

BinarySvmModel solve_binary(const std::vector<Point>& points, std::span<const int> labels,
                            const KernelConfig& kernel, double c, double tol = 1e-3,
                            std::size_t max_passes = 0);

// sum_i dual_coefs_i K(sv_i, v) + bias
double predict_decision(const BinarySvmModel& m, std::span<const double> v);

double dual_objective(const GramMatrix& gram, std::span<const int> labels,
                      std::span<const double> alpha);

}  // namespace salesig::svm
