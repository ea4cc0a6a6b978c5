#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace salesig::svm {

using Point = std::vector<double>;

enum class KernelKind { Linear, Polynomial, Rbf, Sigmoid };

std::string to_string(KernelKind kind);
// Accepts linear, poly, polynomial, rbf, sigmoid. ConfigError otherwise.
KernelKind parse_kernel_kind(const std::string& text);

struct KernelConfig {
  KernelKind kind = KernelKind::Rbf;
  double gamma = 1.0;  // rbf, polynomial, sigmoid
  int degree = 3;      // polynomial
  double coef0 = 0.0;  // polynomial, sigmoid

  // ConfigError unless gamma > 0 (where used) and degree >= 1.
  void validate() const;

  bool operator==(const KernelConfig&) const = default;
};

// linear a.b; polynomial (gamma a.b + coef0)^degree; rbf exp(-gamma |a-b|^2);
// sigmoid tanh(gamma a.b + coef0). ContractError on dimension mismatch.
double kernel_eval(const KernelConfig& cfg, std::span<const double> a, std::span<const double> b);

// Dense symmetric kernel matrix over one training set.
class GramMatrix {
 public:
  GramMatrix() = default;
  // NumericError if any entry is non-finite.
  GramMatrix(const KernelConfig& cfg, const std::vector<Point>& points);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace salesig::svm
