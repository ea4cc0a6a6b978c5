#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salesig/catalog.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/svm/scaler.hpp"
#include "salesig/svm/smo.hpp"

namespace salesig::svm {

enum class ClassWeighting { None, Balanced };

std::string to_string(ClassWeighting w);
ClassWeighting parse_class_weighting(const std::string& text);

struct TrainOptions {
  KernelConfig kernel;
  // When set, kernel.gamma is replaced by default_gamma() of the scaled
  // training features.
  bool auto_gamma = true;
  double c = 1.0;
  ClassWeighting weighting = ClassWeighting::None;
  SmoOptions smo;
  // Per-class problems run concurrently; output is identical either way.
  bool parallel = true;
};

// One-vs-rest: binaries[i] separates class_names[i] (+1) from the rest (-1).
struct MulticlassSvmModel {
  ScalerParams scaler;
  std::vector<std::string> class_names;
  std::vector<BinarySvmModel> binaries;
  // Band bounds the labels were derived from, when known.
  std::optional<PriceBandSpec> bands;
};

// 1 / (features * mean per-feature variance); 1 / features when the mean
// variance is zero.
double default_gamma(const std::vector<Point>& scaled);

std::vector<Point> feature_matrix(const Dataset& ds);

// Labels come from assigning each record's original price to a band.
// ContractError if a band has no training records.
MulticlassSvmModel train_multiclass(const Dataset& ds, const PriceBandSpec& bands,
                                    const TrainOptions& options);
MulticlassSvmModel train_multiclass(const Dataset& ds, const PriceBandSpec& bands,
                                    const KernelConfig& kernel, double c);

std::vector<double> decision_values(const MulticlassSvmModel& m, const FeatureVector& f);

// Argmax over decision values; ties go to the lowest class index.
const std::string& predict_band(const MulticlassSvmModel& m, const FeatureVector& f);

// Fraction of records whose predicted band equals the band of their
// original price. 0 for an empty dataset.
double accuracy(const MulticlassSvmModel& m, const PriceBandSpec& bands, const Dataset& ds);

}  // namespace salesig::svm
