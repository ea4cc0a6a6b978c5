#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "salesig/catalog.hpp"

namespace salesig {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Half-open price interval [lower, upper).
struct PriceBand {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool operator==(const PriceBand&) const = default;
};

// Ordered, contiguous, disjoint bands ending at +inf. Validated on
// construction; throws ConfigError.
class PriceBandSpec {
 public:
  explicit PriceBandSpec(std::vector<PriceBand> bands);

  const std::vector<PriceBand>& bands() const { return bands_; }
  std::size_t size() const { return bands_.size(); }
  const PriceBand& operator[](std::size_t i) const { return bands_[i]; }

  std::vector<std::string> names() const;
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // ConfigError if absent

  // BandError when price <= 0 or below the first band.
  std::size_t assign_index(double price) const;
  const std::string& assign(double price) const { return bands_[assign_index(price)].name; }

  bool operator==(const PriceBandSpec&) const = default;

 private:
  std::vector<PriceBand> bands_;
};

// LOW / BUDGET / MID RANGE / PREMIUM with cut points 5000, 15000, 30000.
PriceBandSpec default_band_spec();

inline const std::string& assign_band(const PriceBandSpec& spec, double price) {
  return spec.assign(price);
}

// [{"name": ..., "lower": ..., "upper": ... | null}, ...]
PriceBandSpec band_spec_from_json(const nlohmann::json& j);
nlohmann::json band_spec_to_json(const PriceBandSpec& spec);
PriceBandSpec load_band_spec(const std::string& path);

struct BandStat {
  std::string name;
  std::size_t count = 0;
  std::optional<double> mean;  // empty band has no mean
  double sd = 0.0;             // sample sd; 0 when count <= 1

  bool degenerate() const { return count <= 1; }
};

struct PriceBandStats {
  std::vector<BandStat> bands;  // same order as the spec

  const BandStat& at(const std::string& name) const;
  std::size_t total() const;
};

// Statistics over original (non-sale) prices. Within a band the prices are
// summed in sorted order so that record order cannot change the result.
PriceBandStats band_stats(const PriceBandSpec& spec, const Dataset& ds);

// Summary of a price list: mean and sample sd (sd 0 for fewer than 2).
BandStat summarize_prices(std::string name, std::vector<double> prices);

// Stats file: {"format": "salesig-stats", "version": 1, "bands": [...]}
// where each band row carries name, lower, upper, count, mean, sd.
nlohmann::json stats_to_json(const PriceBandSpec& spec, const PriceBandStats& stats);
PriceBandStats stats_from_json(const nlohmann::json& j, const PriceBandSpec& spec);

}  // namespace salesig
