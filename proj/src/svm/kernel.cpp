#include "salesig/svm/kernel.hpp"

#include <cmath>

#include "salesig/errors.hpp"

namespace salesig::svm {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Linear:
      return "linear";
    case KernelKind::Polynomial:
      return "poly";
    case KernelKind::Rbf:
      return "rbf";
    case KernelKind::Sigmoid:
      return "sigmoid";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(const std::string& text) {
  if (text == "linear") return KernelKind::Linear;
  if (text == "poly" || text == "polynomial") return KernelKind::Polynomial;
  if (text == "rbf") return KernelKind::Rbf;
  if (text == "sigmoid") return KernelKind::Sigmoid;
  throw ConfigError("unknown kernel '" + text + "'");
}

void KernelConfig::validate() const {
  if (kind != KernelKind::Linear && !(gamma > 0.0 && std::isfinite(gamma))) {
    throw ConfigError("kernel gamma must be positive");
  }
  if (kind == KernelKind::Polynomial && degree < 1) {
    throw ConfigError("polynomial degree must be at least 1");
  }
  if (!std::isfinite(coef0)) throw ConfigError("kernel coef0 must be finite");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double kernel_eval(const KernelConfig& cfg, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractError("kernel arguments differ in dimension (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
  }
  switch (cfg.kind) {
    case KernelKind::Linear:
      return dot(a, b);
    case KernelKind::Polynomial:
      return std::pow(cfg.gamma * dot(a, b) + cfg.coef0, cfg.degree);
    case KernelKind::Rbf: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
      return std::exp(-cfg.gamma * d2);
    }
    case KernelKind::Sigmoid:
      return std::tanh(cfg.gamma * dot(a, b) + cfg.coef0);
  }
  return 0.0;
}

GramMatrix::GramMatrix(const KernelConfig& cfg, const std::vector<Point>& points)
    : n_(points.size()), data_(points.size() * points.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const double k = kernel_eval(cfg, points[i], points[j]);
      if (!std::isfinite(k)) {
        throw NumericError("non-finite kernel value at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
      data_[i * n_ + j] = k;
      data_[j * n_ + i] = k;
    }
  }
}

}  // namespace salesig::svm
