#pragma once

#include <cstdint>
#include <vector>

#include "salesig/catalog.hpp"
#include "salesig/pricebands.hpp"

namespace salesig {

// Seeded stand-in for a crawled phone catalog. Prices are drawn inside each
// band; features follow a latent quality score that rises with price, plus
// ladder-index noise, so features predict the band without determining it.
struct SynthOptions {
  std::uint64_t seed = 42;
  PriceBandSpec bands = default_band_spec();
  std::vector<std::size_t> counts{426, 204, 76, 27};

  double feature_noise = 0.45;  // sd of ladder-index noise

  // Sale prices.
  double no_discount_rate = 0.3;
  double mean_discount = 0.05;  // mean of the exponential discount fraction
  double max_discount = 0.8;
  double increase_rate = 0.01;  // share of listings whose price goes up

  // Dirty raw catalog: extra rows with a blank cell, and colour duplicates.
  std::size_t null_rows = 170;
  std::size_t duplicate_rows = 290;
};

struct SynthOutput {
  Dataset nonsale;  // sale_price absent
  Dataset sale;     // same records with sale_price
  RawCatalog raw;   // nonsale plus injected null and duplicate rows
};

// ConfigError when counts do not match the band count.
SynthOutput synthesize(const SynthOptions& options);

}  // namespace salesig
