#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "salesig/catalog.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/svm/multiclass.hpp"

namespace salesig {

// How discounts are bucketed. A same-band discount d falls in fold n when
// n*k*sd <= d < (n+1)*k*sd, sd being the predicted band's price sd; fold n
// is named fold_names[min(n, last)]. A sale price that lands in a lower band
// than the predicted one is named cross_class_name.
struct SignificancePolicy {
  double k = 0.5;
  std::vector<std::string> fold_names{"POOR", "ACCEPTABLE", "GOOD"};
  std::string cross_class_name = "EXCELLENT";
  bool graded_cross_class = false;

  // ConfigError unless 0 < k <= 1, fold_names is non-empty and all names
  // (including the cross-class one) are distinct and non-empty.
  void validate() const;
};

SignificancePolicy policy_from_json(const nlohmann::json& j);
nlohmann::json policy_to_json(const SignificancePolicy& p);
SignificancePolicy load_policy(const std::string& path);

enum class Anomaly : std::uint8_t {
  NegativeDiscount = 1 << 0,
  SaleBandAbovePredicted = 1 << 1,
  DegenerateSd = 1 << 2,
  PredictedVsListedBandMismatch = 1 << 3,
};

std::string to_string(Anomaly a);

class AnomalySet {
 public:
  void set(Anomaly a) { bits_ |= static_cast<std::uint8_t>(a); }
  bool has(Anomaly a) const { return bits_ & static_cast<std::uint8_t>(a); }
  bool empty() const { return bits_ == 0; }
  std::vector<std::string> names() const;
  bool operator==(const AnomalySet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

struct SignificanceVerdict {
  std::string id;
  std::string predicted_band;   // from the features, via the model
  std::string sale_price_band;  // band of the sale price
  std::string listed_band;      // band of the original price (informational)
  double discount = 0.0;        // original - sale
  std::optional<std::int64_t> fold;  // nullopt is the infinite fold
  std::size_t x_levels = 0;     // bands dropped; 0 unless cross-class
  std::string class_name;
  AnomalySet anomalies;

  bool cross_class() const { return !fold.has_value(); }
};

// The fold index n with n*width <= discount < (n+1)*width, for discount >= 0
// and width > 0.
std::int64_t fold_index(double discount, double width);

// Classification once the predicted band is known. Stats must come from the
// same band spec. ContractError without a sale price, BandError when a
// price has no band.
SignificanceVerdict classify_with_prediction(const SignificancePolicy& policy,
                                             const PriceBandSpec& bands,
                                             const PriceBandStats& stats,
                                             const std::string& predicted_band,
                                             const CommodityRecord& rec);

SignificanceVerdict classify_discount(const SignificancePolicy& policy, const PriceBandSpec& bands,
                                      const PriceBandStats& stats,
                                      const svm::MulticlassSvmModel& model,
                                      const CommodityRecord& rec);

struct Reject {
  std::string id;
  std::string reason;
};

struct Classification {
  std::vector<SignificanceVerdict> verdicts;
  std::vector<Reject> rejects;
};

// Input order is kept; records that fail go to rejects with the reason.
Classification classify_dataset(const SignificancePolicy& policy, const PriceBandSpec& bands,
                                const PriceBandStats& stats, const svm::MulticlassSvmModel& model,
                                const Dataset& ds);

}  // namespace salesig
