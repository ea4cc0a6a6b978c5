#include "salesig/pricebands.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "salesig/errors.hpp"
#include "salesig/text.hpp"

namespace salesig {

PriceBandSpec::PriceBandSpec(std::vector<PriceBand> bands) : bands_(std::move(bands)) {
  if (bands_.size() < 2) throw ConfigError("a band spec needs at least 2 bands");
  std::set<std::string> names;
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    const auto& b = bands_[i];
    if (b.name.empty()) throw ConfigError("band " + std::to_string(i) + " has an empty name");
    if (!names.insert(b.name).second) throw ConfigError("duplicate band name '" + b.name + "'");
    if (!std::isfinite(b.lower) || b.lower < 0.0) {
      throw ConfigError("band '" + b.name + "' has an invalid lower bound");
    }
    if (!(b.upper > b.lower)) throw ConfigError("band '" + b.name + "' is empty");
    const bool last = i + 1 == bands_.size();
    if (last && !std::isinf(b.upper)) {
      throw ConfigError("last band '" + b.name + "' must be unbounded above");
    }
    if (!last) {
      if (std::isinf(b.upper)) {
        throw ConfigError("only the last band may be unbounded ('" + b.name + "')");
      }
      if (b.upper != bands_[i + 1].lower) {
        throw ConfigError("bands '" + b.name + "' and '" + bands_[i + 1].name +
                          "' are not contiguous");
      }
    }
  }
}

std::vector<std::string> PriceBandSpec::names() const {
  std::vector<std::string> out;
  out.reserve(bands_.size());
  for (const auto& b : bands_) out.push_back(b.name);
  return out;
}

std::optional<std::size_t> PriceBandSpec::find(const std::string& name) const {
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    if (bands_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t PriceBandSpec::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw ConfigError("unknown band '" + name + "'");
}

std::size_t PriceBandSpec::assign_index(double price) const {
  if (!(price > 0.0) || !std::isfinite(price)) {
    throw BandError("price " + format_number(price) + " is not a positive amount");
  }
  if (price < bands_.front().lower) {
    throw BandError("price " + format_number(price) + " is below the first band '" +
                    bands_.front().name + "'");
  }
  // upper bounds are strictly increasing; first band whose upper exceeds price
  auto it = std::upper_bound(bands_.begin(), bands_.end(), price,
                             [](double p, const PriceBand& b) { return p < b.upper; });
  return static_cast<std::size_t>(it - bands_.begin());
}

PriceBandSpec default_band_spec() {
  // (0, 5000): the open lower end comes from assign_index rejecting price <= 0
  return PriceBandSpec({{"LOW", 0.0, 5000.0},
                        {"BUDGET", 5000.0, 15000.0},
                        {"MID RANGE", 15000.0, 30000.0},
                        {"PREMIUM", 30000.0, kInfinity}});
}

namespace {

double json_bound(const nlohmann::json& j, const char* key, bool allow_null) {
  if (!j.contains(key)) throw ConfigError(std::string("band entry lacks '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_null() && allow_null) return kInfinity;
  if (!v.is_number()) throw ConfigError(std::string("band '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

PriceBandSpec band_spec_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("band spec must be a JSON array");
  std::vector<PriceBand> bands;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("name") || !e.at("name").is_string()) {
      throw ConfigError("band entry needs a string 'name'");
    }
    bands.push_back({e.at("name").get<std::string>(), json_bound(e, "lower", false),
                     json_bound(e, "upper", true)});
  }
  return PriceBandSpec(std::move(bands));
}

nlohmann::json band_spec_to_json(const PriceBandSpec& spec) {
  auto j = nlohmann::json::array();
  for (const auto& b : spec.bands()) {
    j.push_back({{"name", b.name},
                 {"lower", b.lower},
                 {"upper", std::isinf(b.upper) ? nlohmann::json(nullptr) : nlohmann::json(b.upper)}});
  }
  return j;
}

PriceBandSpec load_band_spec(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("band spec '" + path + "': " + e.what());
  }
  return band_spec_from_json(j);
}

const BandStat& PriceBandStats::at(const std::string& name) const {
  for (const auto& b : bands) {
    if (b.name == name) return b;
  }
  throw ConfigError("no statistics for band '" + name + "'");
}

std::size_t PriceBandStats::total() const {
  std::size_t n = 0;
  for (const auto& b : bands) n += b.count;
  return n;
}

BandStat summarize_prices(std::string name, std::vector<double> prices) {
  BandStat s;
  s.name = std::move(name);
  s.count = prices.size();
  if (prices.empty()) return s;
  std::sort(prices.begin(), prices.end());
  double sum = 0.0;
  for (double p : prices) sum += p;
  const double mean = sum / static_cast<double>(prices.size());
  s.mean = mean;
  if (prices.size() >= 2) {
    double ss = 0.0;
    for (double p : prices) ss += (p - mean) * (p - mean);
    s.sd = std::sqrt(ss / static_cast<double>(prices.size() - 1));
  }
  return s;
}

PriceBandStats band_stats(const PriceBandSpec& spec, const Dataset& ds) {
  std::vector<std::vector<double>> prices(spec.size());
  for (const auto& r : ds.records) prices[spec.assign_index(r.original_price)].push_back(r.original_price);
  PriceBandStats out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out.bands.push_back(summarize_prices(spec[i].name, std::move(prices[i])));
  }
  return out;
}

nlohmann::json stats_to_json(const PriceBandSpec& spec, const PriceBandStats& stats) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& b = spec[i];
    const auto& s = stats.bands.at(i);
    rows.push_back({{"name", b.name},
                    {"lower", b.lower},
                    {"upper", std::isinf(b.upper) ? nlohmann::json(nullptr) : nlohmann::json(b.upper)},
                    {"count", s.count},
                    {"mean", s.mean ? nlohmann::json(*s.mean) : nlohmann::json(nullptr)},
                    {"sd", s.sd}});
  }
  return {{"format", "salesig-stats"}, {"version", 1}, {"bands", rows}};
}

PriceBandStats stats_from_json(const nlohmann::json& j, const PriceBandSpec& spec) {
  try {
    if (j.value("format", "") != "salesig-stats") throw PersistenceError("not a stats document");
    if (j.at("version").get<int>() != 1) {
      throw PersistenceError("unsupported stats version " + j.at("version").dump());
    }
    const auto& rows = j.at("bands");
    if (!rows.is_array() || rows.size() != spec.size()) {
      throw ConfigError("stats file band count does not match the band spec");
    }
    PriceBandStats out;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const auto& r = rows[i];
      BandStat s;
      s.name = r.at("name").get<std::string>();
      if (s.name != spec[i].name) {
        throw ConfigError("stats band '" + s.name + "' does not match spec band '" + spec[i].name + "'");
      }
      s.count = r.at("count").get<std::size_t>();
      if (!r.at("mean").is_null()) s.mean = r.at("mean").get<double>();
      s.sd = r.at("sd").get<double>();
      if (!(s.sd >= 0.0) || !std::isfinite(s.sd)) {
        throw PersistenceError("band '" + s.name + "' has an invalid sd");
      }
      out.bands.push_back(std::move(s));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw PersistenceError(std::string("malformed stats document: ") + e.what());
  }
}

}  // namespace salesig
