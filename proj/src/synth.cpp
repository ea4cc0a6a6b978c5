#include "salesig/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "salesig/errors.hpp"
#include "salesig/random.hpp"

namespace salesig {
namespace {

constexpr std::array<double, 9> kRam{0.5, 1, 1.5, 2, 3, 4, 6, 8, 12};
constexpr std::array<double, 8> kStorage{4, 8, 16, 32, 64, 128, 256, 512};
constexpr std::array<double, 9> kFront{0, 2, 5, 8, 13, 16, 20, 25, 32};
constexpr std::array<double, 9> kBack{2, 5, 8, 12, 13, 16, 48, 64, 108};

constexpr std::array<const char*, 8> kBrands{"Acme",   "Nimbus", "Orion", "Vertex",
                                             "Zephyr", "Kestrel", "Lumen", "Quanta"};
constexpr std::array<const char*, 6> kColours{"Black", "Blue", "Silver", "Green", "Red", "Gold"};

// Exponent on a uniform draw for the within-band price position; larger
// values crowd prices towards the lower bound.
double position_exponent(std::size_t band, std::size_t band_count) {
  if (band_count == 4) return std::array<double, 4>{2.7, 1.2, 2.3, 4.6}[band];
  return 1.5;
}

template <std::size_t N>
double ladder(const std::array<double, N>& steps, double q, double noise, Rng& rng) {
  const double pos = q * static_cast<double>(N - 1) + rng.normal(0.0, noise);
  const auto idx = std::clamp<long>(std::lround(pos), 0, static_cast<long>(N - 1));
  return steps[static_cast<std::size_t>(idx)];
}

double retail_round(double p, double lower, double upper) {
  // Prices like 4399 or 12999: round down to the hundred, end in 99.
  const double r = std::floor(p / 100.0) * 100.0 + 99.0;
  if (r >= lower && r < upper) return r;
  const double plain = std::ceil(p);
  return plain < upper ? std::max(plain, std::ceil(lower)) : std::floor(p);
}

std::string pad(std::size_t n, int width) {
  std::string s = std::to_string(n);
  return std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0, '0') + s;
}

CatalogRow to_row(const CommodityRecord& r) {
  CatalogRow row;
  row.id = r.id;
  row.name = r.name;
  const auto v = r.features.values();
  for (std::size_t f = 0; f < kFeatureCount; ++f) row.features[f] = v[f];
  row.original_price = r.original_price;
  return row;
}

}  // namespace

SynthOutput synthesize(const SynthOptions& opt) {
  const auto& bands = opt.bands;
  if (opt.counts.size() != bands.size()) {
    throw ConfigError("synth counts list has " + std::to_string(opt.counts.size()) +
                      " entries but the band spec has " + std::to_string(bands.size()) + " bands");
  }
  if (!(opt.mean_discount >= 0.0) || !(opt.max_discount >= 0.0 && opt.max_discount < 1.0) ||
      !(opt.no_discount_rate >= 0.0) || !(opt.increase_rate >= 0.0) ||
      opt.no_discount_rate + opt.increase_rate > 1.0) {
    throw ConfigError("invalid synth discount parameters");
  }

  Rng rng(opt.seed);
  const std::size_t g = bands.size();
  SynthOutput out;
  out.nonsale.provenance = "synthetic catalog, seed " + std::to_string(opt.seed);
  out.sale.provenance = out.nonsale.provenance + " (sale)";

  using Key = std::tuple<std::array<double, kFeatureCount>, double>;
  std::set<Key> seen;
  std::size_t serial = 0;

  for (std::size_t b = 0; b < g; ++b) {
    const double upper = std::isinf(bands[b].upper) ? bands[b].lower * 5.0 : bands[b].upper;
    // Nothing sells for a few rupees; the first band starts at 8% of its top.
    const double lower = b == 0 ? std::max(bands[b].lower, 0.08 * upper) : bands[b].lower;
    for (std::size_t k = 0; k < opt.counts[b]; ++k) {
      CommodityRecord rec;
      for (;;) {
        const double u = std::pow(rng.uniform(), position_exponent(b, g));
        const double price = retail_round(lower + (upper - lower) * u, bands[b].lower,
                                          std::isinf(bands[b].upper) ? kInfinity : upper);
        const double q = (static_cast<double>(b) + (price - lower) / (upper - lower)) /
                         static_cast<double>(g);
        const double noise = opt.feature_noise;
        FeatureVector f;
        f.ram_gb = ladder(kRam, q, noise, rng);
        f.storage_gb = ladder(kStorage, q, noise, rng);
        f.front_camera_mp = ladder(kFront, q, noise, rng);
        f.back_camera_mp = ladder(kBack, q, noise, rng);
        const double battery = 1000.0 + 4500.0 * q + rng.normal(0.0, 350.0);
        f.battery_mah = std::clamp(std::round(battery / 50.0) * 50.0, 800.0, 6000.0);
        if (seen.insert({f.values(), price}).second) {
          rec.features = f;
          rec.original_price = price;
          break;
        }
      }
      ++serial;
      rec.id = "P" + pad(serial, 4);
      rec.name = std::string(kBrands[rng.index(kBrands.size())]) + " " +
                 static_cast<char>('A' + rng.index(26)) + std::to_string(10 + rng.index(90)) +
                 " (" + kColours[0] + ")";
      out.nonsale.records.push_back(rec);
    }
  }

  // Sale prices.
  for (const auto& r : out.nonsale.records) {
    CommodityRecord s = r;
    const double roll = rng.uniform();
    double sale = r.original_price;
    if (roll < opt.increase_rate) {
      sale = std::round(r.original_price * (1.0 + rng.uniform(0.01, 0.05)));
    } else if (roll >= opt.increase_rate + opt.no_discount_rate) {
      double u;
      do {
        u = rng.uniform();
      } while (u <= 0.0);
      const double d = std::min(opt.max_discount, -std::log(u) * opt.mean_discount);
      sale = std::max(1.0, std::round(r.original_price * (1.0 - d)));
    }
    s.sale_price = sale;
    out.sale.records.push_back(std::move(s));
  }

  // Raw catalog: clean rows first, then junk inserted at seeded positions.
  // Duplicates always land after their original so cleaning keeps the
  // original row.
  std::vector<CatalogRow> rows;
  for (const auto& r : out.nonsale.records) rows.push_back(to_row(r));
  std::size_t junk_serial = 0;
  const std::size_t clean_count = out.nonsale.records.size();
  for (std::size_t k = 0; k < opt.null_rows + opt.duplicate_rows && clean_count > 0; ++k) {
    const auto& src = out.nonsale.records[rng.index(clean_count)];
    CatalogRow row = to_row(src);
    row.id = "R" + pad(++junk_serial, 4);
    std::size_t earliest = 0;
    if (k < opt.null_rows) {
      // blank one of the five features or the price
      const auto col = rng.index(kFeatureCount + 1);
      if (col < kFeatureCount) {
        row.features[col].reset();
      } else {
        row.original_price.reset();
      }
    } else {
      const auto colour = 1 + rng.index(kColours.size() - 1);
      row.name = src.name.substr(0, src.name.rfind('(')) + "(" + kColours[colour] + ")";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].id == src.id) earliest = i + 1;
      }
    }
    const std::size_t pos = earliest + rng.index(rows.size() - earliest + 1);
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
  }
  std::size_t line = 2;
  for (auto& r : rows) r.line = line++;
  out.raw.rows = std::move(rows);
  out.raw.provenance = out.nonsale.provenance + " (raw)";
  return out;
}

}  // namespace salesig
