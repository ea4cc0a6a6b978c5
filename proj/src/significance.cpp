#include "salesig/significance.hpp"

#include <cmath>
#include <set>

#include "salesig/errors.hpp"
#include "salesig/text.hpp"

namespace salesig {

void SignificancePolicy::validate() const {
  if (!(k > 0.0 && k <= 1.0)) throw ConfigError("policy k must satisfy 0 < k <= 1");
  if (fold_names.empty()) throw ConfigError("policy needs at least one fold name");
  std::set<std::string> names{cross_class_name};
  if (cross_class_name.empty()) throw ConfigError("cross-class name must not be empty");
  for (const auto& n : fold_names) {
    if (n.empty()) throw ConfigError("fold names must not be empty");
    if (!names.insert(n).second) throw ConfigError("duplicate significance class '" + n + "'");
  }
}

SignificancePolicy policy_from_json(const nlohmann::json& j) {
  SignificancePolicy p;
  try {
    if (!j.is_object()) throw ConfigError("policy must be a JSON object");
    p.k = j.value("k", p.k);
    if (j.contains("fold_names")) p.fold_names = j.at("fold_names").get<std::vector<std::string>>();
    p.cross_class_name = j.value("cross_class_name", p.cross_class_name);
    p.graded_cross_class = j.value("graded_cross_class", p.graded_cross_class);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed policy: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::json policy_to_json(const SignificancePolicy& p) {
  return {{"k", p.k},
          {"fold_names", p.fold_names},
          {"cross_class_name", p.cross_class_name},
          {"graded_cross_class", p.graded_cross_class}};
}

SignificancePolicy load_policy(const std::string& path) {
  try {
    return policy_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("policy '" + path + "': " + e.what());
  }
}

std::string to_string(Anomaly a) {
  switch (a) {
    case Anomaly::NegativeDiscount:
      return "negative_discount";
    case Anomaly::SaleBandAbovePredicted:
      return "sale_band_above_predicted";
    case Anomaly::DegenerateSd:
      return "degenerate_sd";
    case Anomaly::PredictedVsListedBandMismatch:
      return "predicted_vs_listed_band_mismatch";
  }
  return "unknown";
}

std::vector<std::string> AnomalySet::names() const {
  std::vector<std::string> out;
  for (auto a : {Anomaly::NegativeDiscount, Anomaly::SaleBandAbovePredicted, Anomaly::DegenerateSd,
                 Anomaly::PredictedVsListedBandMismatch}) {
    if (has(a)) out.push_back(to_string(a));
  }
  return out;
}

std::int64_t fold_index(double discount, double width) {
  if (!(discount >= 0.0) || !(width > 0.0)) {
    throw ContractError("fold index needs a non-negative discount and a positive width");
  }
  auto n = static_cast<std::int64_t>(std::floor(discount / width));
  // The quotient can round across a boundary; settle on the product form.
  while (n > 0 && static_cast<double>(n) * width > discount) --n;
  while (static_cast<double>(n + 1) * width <= discount) ++n;
  return n;
}

SignificanceVerdict classify_with_prediction(const SignificancePolicy& policy,
                                             const PriceBandSpec& bands,
                                             const PriceBandStats& stats,
                                             const std::string& predicted_band,
                                             const CommodityRecord& rec) {
  if (!rec.sale_price) throw ContractError("record '" + rec.id + "' has no sale price");
  if (stats.bands.size() != bands.size()) {
    throw ConfigError("band statistics do not match the band spec");
  }

  SignificanceVerdict v;
  v.id = rec.id;
  v.predicted_band = predicted_band;
  const std::size_t predicted = bands.index_of(predicted_band);
  const std::size_t sale = bands.assign_index(*rec.sale_price);
  const std::size_t listed = bands.assign_index(rec.original_price);
  v.sale_price_band = bands[sale].name;
  v.listed_band = bands[listed].name;
  v.discount = rec.original_price - *rec.sale_price;

  if (listed != predicted) v.anomalies.set(Anomaly::PredictedVsListedBandMismatch);
  if (v.discount < 0.0) v.anomalies.set(Anomaly::NegativeDiscount);

  if (sale < predicted) {
    v.fold = std::nullopt;
    v.x_levels = predicted - sale;
    v.class_name = policy.cross_class_name;
    return v;
  }
  if (sale > predicted) v.anomalies.set(Anomaly::SaleBandAbovePredicted);

  const std::int64_t last = static_cast<std::int64_t>(policy.fold_names.size()) - 1;
  const double sd = stats.bands[predicted].sd;
  std::int64_t n = 0;
  if (v.discount < 0.0) {
    n = 0;
    if (!(sd > 0.0)) v.anomalies.set(Anomaly::DegenerateSd);
  } else if (!(sd > 0.0)) {
    v.anomalies.set(Anomaly::DegenerateSd);
    n = v.discount > 0.0 ? last : 0;
  } else {
    n = fold_index(v.discount, policy.k * sd);
  }
  v.fold = n;
  v.class_name = policy.fold_names[static_cast<std::size_t>(std::min(n, last))];
  return v;
}

SignificanceVerdict classify_discount(const SignificancePolicy& policy, const PriceBandSpec& bands,
                                      const PriceBandStats& stats,
                                      const svm::MulticlassSvmModel& model,
                                      const CommodityRecord& rec) {
  if (!rec.sale_price) throw ContractError("record '" + rec.id + "' has no sale price");
  return classify_with_prediction(policy, bands, stats, svm::predict_band(model, rec.features), rec);
}

Classification classify_dataset(const SignificancePolicy& policy, const PriceBandSpec& bands,
                                const PriceBandStats& stats, const svm::MulticlassSvmModel& model,
                                const Dataset& ds) {
  Classification out;
  for (const auto& rec : ds.records) {
    try {
      out.verdicts.push_back(classify_discount(policy, bands, stats, model, rec));
    } catch (const DataError& e) {
      out.rejects.push_back({rec.id, e.what()});
    } catch (const NumericError& e) {
      out.rejects.push_back({rec.id, e.what()});
    }
  }
  return out;
}

}  // namespace salesig
