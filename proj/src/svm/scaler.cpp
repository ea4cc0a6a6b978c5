#include "salesig/svm/scaler.hpp"

#include <cmath>

#include "salesig/errors.hpp"

namespace salesig::svm {

ScalerParams fit_scaler(const std::vector<Point>& train) {
  if (train.empty()) throw ContractError("cannot fit a scaler on an empty training set");
  const std::size_t dims = train.front().size();
  const auto n = static_cast<double>(train.size());

  ScalerParams p;
  p.means.assign(dims, 0.0);
  p.sds.assign(dims, 1.0);
  p.substituted.assign(dims, false);

  for (const auto& v : train) {
    if (v.size() != dims) throw ContractError("training vectors differ in dimension");
    for (std::size_t f = 0; f < dims; ++f) p.means[f] += v[f];
  }
  for (auto& m : p.means) m /= n;

  for (std::size_t f = 0; f < dims; ++f) {
    double ss = 0.0;
    for (const auto& v : train) ss += (v[f] - p.means[f]) * (v[f] - p.means[f]);
    const double sd = train.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    if (sd > 0.0) {
      p.sds[f] = sd;
    } else {
      p.substituted[f] = true;
    }
  }
  return p;
}

Point apply_scaler(const ScalerParams& p, std::span<const double> v) {
  if (v.size() != p.dims()) {
    throw ContractError("vector has " + std::to_string(v.size()) + " features, scaler expects " +
                        std::to_string(p.dims()));
  }
  Point out(v.size());
  for (std::size_t f = 0; f < v.size(); ++f) {
    if (!std::isfinite(v[f])) throw ContractError("non-finite feature value");
    out[f] = p.substituted[f] ? 0.0 : (v[f] - p.means[f]) / p.sds[f];
  }
  return out;
}

std::vector<Point> apply_scaler(const ScalerParams& p, const std::vector<Point>& vs) {
  std::vector<Point> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(apply_scaler(p, v));
  return out;
}

}  // namespace salesig::svm
