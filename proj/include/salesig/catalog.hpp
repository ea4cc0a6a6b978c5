#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace salesig {

class PriceBandSpec;

inline constexpr std::size_t kFeatureCount = 5;

// Hardware features of a phone listing, in catalog column order.
struct FeatureVector {
  double ram_gb = 0.0;
  double storage_gb = 0.0;
  double front_camera_mp = 0.0;
  double back_camera_mp = 0.0;
  double battery_mah = 0.0;

  std::array<double, kFeatureCount> values() const {
    return {ram_gb, storage_gb, front_camera_mp, back_camera_mp, battery_mah};
  }
  static FeatureVector from_values(const std::array<double, kFeatureCount>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }

  bool operator==(const FeatureVector&) const = default;
};

struct CommodityRecord {
  std::string id;
  std::string name;
  FeatureVector features;
  double original_price = 0.0;
  std::optional<double> sale_price;
};

struct Dataset {
  std::vector<CommodityRecord> records;
  std::string provenance;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

// One CSV row before cleaning. Empty cells are nullopt.
struct CatalogRow {
  std::string id;
  std::string name;
  std::array<std::optional<double>, kFeatureCount> features;
  std::optional<double> original_price;
  std::optional<double> sale_price;
  std::size_t line = 0;  // 1-based file row; the header is row 1
};

struct RawCatalog {
  std::vector<CatalogRow> rows;
  std::string provenance;
};

inline constexpr std::array<std::string_view, 9> kCatalogColumns = {
    "id",          "name",        "ram_gb",         "storage_gb", "front_cam_mp",
    "back_cam_mp", "battery_mah", "original_price", "sale_price"};

// Throws SchemaError on header mismatch (naming the column) and ParseError
// (with the row number) on malformed cells.
RawCatalog parse_catalog_csv(std::string_view text, std::string provenance = {});
RawCatalog load_catalog_csv(const std::string& path);

std::string format_catalog_csv(const Dataset& ds);
std::string format_catalog_csv(const RawCatalog& raw);

// Converts without dropping anything; complete rows only, otherwise DataError.
Dataset to_dataset(const RawCatalog& raw);

struct CleanReport {
  std::size_t input = 0;
  std::size_t null_dropped = 0;
  std::size_t dedup_dropped = 0;
  std::size_t output = 0;
};

struct CleanResult {
  Dataset dataset;
  CleanReport report;
};

// Drops rows with a null feature or null original price, then drops exact
// (features, original_price, sale_price) duplicates keeping the first.
CleanResult clean(const RawCatalog& raw);
CleanResult clean(const Dataset& ds);

struct Split {
  Dataset train;
  Dataset test;
};

// Per band: seeded shuffle, then round(fraction * size) records go to train,
// leaving at least one test record when the band has two or more. Both
// outputs keep the input's relative order.
Split stratified_split(const Dataset& ds, const PriceBandSpec& bands,
                       double train_fraction, std::uint64_t seed);

// Train share for one band under the rule above.
std::size_t train_share(std::size_t band_size, double train_fraction);

}  // namespace salesig
