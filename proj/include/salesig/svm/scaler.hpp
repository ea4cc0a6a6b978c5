#pragma once

#include <span>
#include <vector>

#include "salesig/svm/kernel.hpp"

namespace salesig::svm {

// Per-feature standardization fitted on a training set. A feature whose
// sample sd is zero (or that has a single sample) gets sd 1 and its
// substituted flag set; such features always scale to 0.
struct ScalerParams {
  std::vector<double> means;
  std::vector<double> sds;
  std::vector<bool> substituted;

  std::size_t dims() const { return means.size(); }
  bool operator==(const ScalerParams&) const = default;
};

ScalerParams fit_scaler(const std::vector<Point>& train);

// ContractError on dimension mismatch or non-finite input.
Point apply_scaler(const ScalerParams& p, std::span<const double> v);

std::vector<Point> apply_scaler(const ScalerParams& p, const std::vector<Point>& vs);

}  // namespace salesig::svm
