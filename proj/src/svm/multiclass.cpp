#include "salesig/svm/multiclass.hpp"

#include <cmath>
#include <future>

#include "salesig/errors.hpp"

namespace salesig::svm {

std::string to_string(ClassWeighting w) {
  return w == ClassWeighting::Balanced ? "balanced" : "none";
}

ClassWeighting parse_class_weighting(const std::string& text) {
  if (text == "none") return ClassWeighting::None;
  if (text == "balanced") return ClassWeighting::Balanced;
  throw ConfigError("unknown class weighting '" + text + "'");
}

double default_gamma(const std::vector<Point>& scaled) {
  if (scaled.empty() || scaled.front().empty()) return 1.0;
  const std::size_t dims = scaled.front().size();
  const auto n = static_cast<double>(scaled.size());
  double var_sum = 0.0;
  for (std::size_t f = 0; f < dims; ++f) {
    double mean = 0.0;
    for (const auto& v : scaled) mean += v[f];
    mean /= n;
    double ss = 0.0;
    for (const auto& v : scaled) ss += (v[f] - mean) * (v[f] - mean);
    var_sum += scaled.size() > 1 ? ss / (n - 1.0) : 0.0;
  }
  const double mean_var = var_sum / static_cast<double>(dims);
  return 1.0 / (static_cast<double>(dims) * (mean_var > 0.0 ? mean_var : 1.0));
}

std::vector<Point> feature_matrix(const Dataset& ds) {
  std::vector<Point> out;
  out.reserve(ds.size());
  for (const auto& r : ds.records) {
    const auto v = r.features.values();
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

MulticlassSvmModel train_multiclass(const Dataset& ds, const PriceBandSpec& bands,
                                    const TrainOptions& options) {
  std::vector<std::size_t> band_of(ds.size());
  std::vector<std::size_t> counts(bands.size(), 0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    band_of[i] = bands.assign_index(ds.records[i].original_price);
    ++counts[band_of[i]];
  }
  for (std::size_t b = 0; b < bands.size(); ++b) {
    if (counts[b] == 0) {
      throw ContractError("band '" + bands[b].name + "' has no training records");
    }
  }

  MulticlassSvmModel model;
  model.class_names = bands.names();
  model.bands = bands;
  model.scaler = fit_scaler(feature_matrix(ds));
  const auto points = apply_scaler(model.scaler, feature_matrix(ds));

  KernelConfig kernel = options.kernel;
  if (options.auto_gamma && kernel.kind != KernelKind::Linear) kernel.gamma = default_gamma(points);
  kernel.validate();

  // Every one-vs-rest problem shares the same points, hence the same Gram.
  const GramMatrix gram(kernel, points);

  auto solve_class = [&](std::size_t cls) {
    std::vector<int> labels(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) labels[i] = band_of[i] == cls ? 1 : -1;
    double wp = 1.0, wn = 1.0;
    if (options.weighting == ClassWeighting::Balanced) {
      const auto n = static_cast<double>(ds.size());
      const auto np = static_cast<double>(counts[cls]);
      wp = n / (2.0 * np);
      wn = n / (2.0 * (n - np));
    }
    SmoOptions smo = options.smo;
    if (options.parallel) smo.observer = nullptr;
    return smo_solve(gram, points, labels, kernel, options.c, smo, wp, wn).model;
  };

  if (options.parallel && bands.size() > 1) {
    std::vector<std::future<BinarySvmModel>> jobs;
    for (std::size_t cls = 0; cls < bands.size(); ++cls) {
      jobs.push_back(std::async(std::launch::async, solve_class, cls));
    }
    for (auto& j : jobs) model.binaries.push_back(j.get());
  } else {
    for (std::size_t cls = 0; cls < bands.size(); ++cls) model.binaries.push_back(solve_class(cls));
  }
  return model;
}

MulticlassSvmModel train_multiclass(const Dataset& ds, const PriceBandSpec& bands,
                                    const KernelConfig& kernel, double c) {
  TrainOptions opts;
  opts.kernel = kernel;
  opts.auto_gamma = false;
  opts.c = c;
  return train_multiclass(ds, bands, opts);
}

std::vector<double> decision_values(const MulticlassSvmModel& m, const FeatureVector& f) {
  const auto raw = f.values();
  const Point v = apply_scaler(m.scaler, raw);
  std::vector<double> out;
  out.reserve(m.binaries.size());
  for (const auto& b : m.binaries) out.push_back(predict_decision(b, v));
  return out;
}

const std::string& predict_band(const MulticlassSvmModel& m, const FeatureVector& f) {
  if (m.class_names.empty() || m.class_names.size() != m.binaries.size()) {
    throw ContractError("model has inconsistent class and binary counts");
  }
  const auto d = decision_values(m, f);
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[best]) best = i;
  }
  if (!std::isfinite(d[best])) throw NumericError("non-finite decision value");
  return m.class_names[best];
}

double accuracy(const MulticlassSvmModel& m, const PriceBandSpec& bands, const Dataset& ds) {
  if (ds.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& r : ds.records) {
    if (predict_band(m, r.features) == bands.assign(r.original_price)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(ds.size());
}

}  // namespace salesig::svm
