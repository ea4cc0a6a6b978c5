#include "salesig/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "salesig/errors.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/random.hpp"
#include "salesig/text.hpp"

namespace salesig {
namespace {

constexpr std::size_t kIdCol = 0;
constexpr std::size_t kNameCol = 1;
constexpr std::size_t kFirstFeatureCol = 2;
constexpr std::size_t kOriginalCol = 7;
constexpr std::size_t kSaleCol = 8;

void check_header(const csv::Row& header) {
  for (std::size_t i = 0; i < kCatalogColumns.size(); ++i) {
    if (i >= header.size()) {
      throw SchemaError("missing column '" + std::string(kCatalogColumns[i]) + "'");
    }
    if (trim(header[i]) != kCatalogColumns[i]) {
      const bool known = std::find(kCatalogColumns.begin(), kCatalogColumns.end(),
                                   trim(header[i])) != kCatalogColumns.end();
      if (known) {
        throw SchemaError("column '" + std::string(kCatalogColumns[i]) +
                          "' expected at position " + std::to_string(i + 1) +
                          ", found '" + header[i] + "'");
      }
      throw SchemaError("unexpected column '" + header[i] + "' (expected '" +
                        std::string(kCatalogColumns[i]) + "')");
    }
  }
  if (header.size() > kCatalogColumns.size()) {
    throw SchemaError("extra column '" + header[kCatalogColumns.size()] + "'");
  }
}

std::optional<double> numeric_cell(const std::string& cell, std::size_t line,
                                   std::string_view column, bool positive) {
  if (trim(cell).empty()) return std::nullopt;
  auto v = parse_number(cell);
  if (!v) {
    throw ParseError(line, "non-numeric value '" + cell + "' in column '" +
                               std::string(column) + "'");
  }
  if (positive ? !(*v > 0.0) : !(*v >= 0.0)) {
    throw ParseError(line, "value " + cell + " in column '" + std::string(column) +
                               (positive ? "' must be positive" : "' must be non-negative"));
  }
  return v;
}

std::string cell_text(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

// Key used for duplicate detection. Prices and features compare exactly.
using DedupKey = std::tuple<std::array<double, kFeatureCount>, double, bool, double>;

DedupKey dedup_key(const CommodityRecord& r) {
  return {r.features.values(), r.original_price, r.sale_price.has_value(),
          r.sale_price.value_or(0.0)};
}

}  // namespace

RawCatalog parse_catalog_csv(std::string_view text, std::string provenance) {
  RawCatalog out;
  out.provenance = std::move(provenance);
  auto rows = csv::parse(text);
  if (rows.empty()) throw SchemaError("missing header row");
  check_header(rows.front());

  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t line = r + 1;
    const csv::Row& row = rows[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;  // blank line
    if (row.size() != kCatalogColumns.size()) {
      throw ParseError(line, "expected " + std::to_string(kCatalogColumns.size()) +
                                 " fields, found " + std::to_string(row.size()));
    }
    CatalogRow cr;
    cr.line = line;
    cr.id = std::string(trim(row[kIdCol]));
    cr.name = row[kNameCol];
    if (cr.id.empty()) throw ParseError(line, "empty id");
    if (!seen.insert(cr.id).second) throw ParseError(line, "duplicate id '" + cr.id + "'");
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      cr.features[f] = numeric_cell(row[kFirstFeatureCol + f], line,
                                    kCatalogColumns[kFirstFeatureCol + f], false);
    }
    cr.original_price = numeric_cell(row[kOriginalCol], line, "original_price", true);
    cr.sale_price = numeric_cell(row[kSaleCol], line, "sale_price", true);
    out.rows.push_back(std::move(cr));
  }
  return out;
}

RawCatalog load_catalog_csv(const std::string& path) {
  return parse_catalog_csv(read_file(path), path);
}

std::string format_catalog_csv(const RawCatalog& raw) {
  std::string out = csv::encode_row(csv::Row(kCatalogColumns.begin(), kCatalogColumns.end()));
  for (const auto& r : raw.rows) {
    csv::Row row{r.id, r.name};
    for (const auto& f : r.features) row.push_back(cell_text(f));
    row.push_back(cell_text(r.original_price));
    row.push_back(cell_text(r.sale_price));
    out += csv::encode_row(row);
  }
  return out;
}

std::string format_catalog_csv(const Dataset& ds) {
  RawCatalog raw;
  for (const auto& r : ds.records) {
    CatalogRow cr;
    cr.id = r.id;
    cr.name = r.name;
    const auto v = r.features.values();
    for (std::size_t f = 0; f < kFeatureCount; ++f) cr.features[f] = v[f];
    cr.original_price = r.original_price;
    cr.sale_price = r.sale_price;
    raw.rows.push_back(std::move(cr));
  }
  return format_catalog_csv(raw);
}

namespace {

std::optional<CommodityRecord> complete_record(const CatalogRow& row) {
  if (!row.original_price) return std::nullopt;
  std::array<double, kFeatureCount> v{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (!row.features[f]) return std::nullopt;
    v[f] = *row.features[f];
  }
  return CommodityRecord{row.id, row.name, FeatureVector::from_values(v),
                         *row.original_price, row.sale_price};
}

}  // namespace

Dataset to_dataset(const RawCatalog& raw) {
  Dataset ds;
  ds.provenance = raw.provenance;
  for (const auto& row : raw.rows) {
    auto rec = complete_record(row);
    if (!rec) throw ParseError(row.line, "record '" + row.id + "' has missing values");
    ds.records.push_back(std::move(*rec));
  }
  return ds;
}

CleanResult clean(const RawCatalog& raw) {
  CleanResult res;
  res.dataset.provenance = raw.provenance;
  res.report.input = raw.rows.size();

  std::set<DedupKey> seen;
  for (const auto& row : raw.rows) {
    auto rec = complete_record(row);
    if (!rec) {
      ++res.report.null_dropped;
      continue;
    }
    if (!seen.insert(dedup_key(*rec)).second) {
      ++res.report.dedup_dropped;
      continue;
    }
    res.dataset.records.push_back(std::move(*rec));
  }
  res.report.output = res.dataset.records.size();
  return res;
}

CleanResult clean(const Dataset& ds) {
  CleanResult res;
  res.dataset.provenance = ds.provenance;
  res.report.input = ds.records.size();
  std::set<DedupKey> seen;
  for (const auto& rec : ds.records) {
    if (!seen.insert(dedup_key(rec)).second) {
      ++res.report.dedup_dropped;
      continue;
    }
    res.dataset.records.push_back(rec);
  }
  res.report.output = res.dataset.records.size();
  return res;
}

std::size_t train_share(std::size_t band_size, double train_fraction) {
  auto share = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(band_size)));
  share = std::min(share, band_size);
  if (band_size >= 2 && share == band_size) share = band_size - 1;
  return share;
}

Split stratified_split(const Dataset& ds, const PriceBandSpec& bands,
                       double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1), got " + format_number(train_fraction));
  }
  std::vector<std::vector<std::size_t>> members(bands.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    members[bands.assign_index(ds.records[i].original_price)].push_back(i);
  }

  Rng rng(seed);
  std::vector<bool> to_train(ds.records.size(), false);
  for (auto& band : members) {
    rng.shuffle(band);
    const std::size_t share = train_share(band.size(), train_fraction);
    for (std::size_t k = 0; k < share; ++k) to_train[band[k]] = true;
  }

  Split split;
  split.train.provenance = ds.provenance + " [train]";
  split.test.provenance = ds.provenance + " [test]";
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    (to_train[i] ? split.train : split.test).records.push_back(ds.records[i]);
  }
  return split;
}

}  // namespace salesig
