#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "salesig/errors.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/random.hpp"

using namespace salesig;
using nlohmann::json;

TEST_CASE("default spec has the four named bands") {
  const auto spec = default_band_spec();
  CHECK(spec.names() == std::vector<std::string>{"LOW", "BUDGET", "MID RANGE", "PREMIUM"});
  CHECK(spec[3].upper == kInfinity);
}

TEST_CASE("band assignment examples") {
  const auto spec = default_band_spec();
  CHECK(assign_band(spec, 4399) == "LOW");
  CHECK(assign_band(spec, 60000) == "PREMIUM");
  CHECK(assign_band(spec, 5000) == "BUDGET");
  CHECK(assign_band(spec, 4999.99) == "LOW");
  CHECK(assign_band(spec, 14999) == "BUDGET");
  CHECK(assign_band(spec, 15000) == "MID RANGE");
  CHECK(assign_band(spec, 30000) == "PREMIUM");
  CHECK(assign_band(spec, 0.01) == "LOW");
}

TEST_CASE("unassignable prices") {
  const auto spec = default_band_spec();
  CHECK_THROWS_AS(spec.assign(0), BandError);
  CHECK_THROWS_AS(spec.assign(-10), BandError);
  CHECK_THROWS_AS(spec.assign(std::nan("")), BandError);
  CHECK_THROWS_AS(spec.assign(kInfinity), BandError);
  const PriceBandSpec from100({{"A", 100, 200}, {"B", 200, kInfinity}});
  CHECK_THROWS_AS(from100.assign(50), BandError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(PriceBandSpec({{"A", 0, kInfinity}}), ConfigError);
  CHECK_THROWS_AS(PriceBandSpec({{"A", 0, 10}, {"A", 10, kInfinity}}), ConfigError);
  CHECK_THROWS_AS(PriceBandSpec({{"A", 0, 10}, {"B", 11, kInfinity}}), ConfigError);
  CHECK_THROWS_AS(PriceBandSpec({{"A", 0, 10}, {"B", 10, 20}}), ConfigError);
  CHECK_THROWS_AS(PriceBandSpec({{"A", 10, 5}, {"B", 5, kInfinity}}), ConfigError);
  CHECK_THROWS_AS(PriceBandSpec({{"", 0, 10}, {"B", 10, kInfinity}}), ConfigError);
  CHECK_THROWS_AS(PriceBandSpec({{"A", -1, 10}, {"B", 10, kInfinity}}), ConfigError);
}

TEST_CASE("band spec json round trip") {
  const auto spec = default_band_spec();
  const auto j = band_spec_to_json(spec);
  CHECK(j[3]["upper"].is_null());
  CHECK(band_spec_from_json(j) == spec);
  CHECK_THROWS_AS(band_spec_from_json(json::parse(R"([{"name":"A","lower":0}])")), ConfigError);
}

TEST_CASE("partition: every positive price lands in exactly one band") {
  const auto spec = default_band_spec();
  Rng rng(17);
  for (int i = 0; i < 20000; ++i) {
    const double price = std::exp(rng.uniform(-3.0, 13.0));
    std::size_t hits = 0, hit = 0;
    for (std::size_t b = 0; b < spec.size(); ++b) {
      if (price >= spec[b].lower && price < spec[b].upper) {
        ++hits;
        hit = b;
      }
    }
    REQUIRE(hits == 1);
    CHECK(spec.assign_index(price) == hit);
  }
}

TEST_CASE("stats examples") {
  const auto s = summarize_prices("X", {10, 20, 30});
  CHECK(s.count == 3);
  CHECK(*s.mean == doctest::Approx(20).epsilon(1e-15));
  CHECK(s.sd == doctest::Approx(10).epsilon(1e-15));

  const auto one = summarize_prices("X", {4399});
  CHECK(one.count == 1);
  CHECK(*one.mean == 4399);
  CHECK(one.sd == 0);
  CHECK(one.degenerate());

  const auto none = summarize_prices("X", {});
  CHECK(none.count == 0);
  CHECK_FALSE(none.mean.has_value());
  CHECK(none.sd == 0);
}

namespace {

Dataset random_catalog(Rng& rng, std::size_t n) {
  Dataset ds;
  for (std::size_t i = 0; i < n; ++i) {
    CommodityRecord r;
    r.id = "p" + std::to_string(i);
    r.original_price = std::round(std::exp(rng.uniform(5.0, 11.5)) * 100.0) / 100.0;
    ds.records.push_back(r);
  }
  return ds;
}

}  // namespace

TEST_CASE("band counts sum to the record count") {
  Rng rng(23);
  const auto spec = default_band_spec();
  for (int t = 0; t < 50; ++t) {
    const auto ds = random_catalog(rng, rng.index(300));
    CHECK(band_stats(spec, ds).total() == ds.size());
  }
}

TEST_CASE("stats do not depend on record order") {
  Rng rng(29);
  const auto spec = default_band_spec();
  for (int t = 0; t < 50; ++t) {
    auto ds = random_catalog(rng, 1 + rng.index(300));
    const auto before = band_stats(spec, ds);
    rng.shuffle(ds.records);
    const auto after = band_stats(spec, ds);
    for (std::size_t b = 0; b < spec.size(); ++b) {
      CHECK(before.bands[b].count == after.bands[b].count);
      CHECK(before.bands[b].mean == after.bands[b].mean);
      CHECK(before.bands[b].sd == after.bands[b].sd);
    }
  }
}

TEST_CASE("shifting prices shifts the mean and keeps the sd") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> prices;
    const auto n = 2 + rng.index(50);
    for (std::size_t i = 0; i < n; ++i) prices.push_back(rng.uniform(1000, 5000));
    const double shift = rng.uniform(-500, 500);
    auto shifted = prices;
    for (auto& p : shifted) p += shift;
    const auto a = summarize_prices("X", prices);
    const auto b = summarize_prices("X", shifted);
    CHECK(*b.mean == doctest::Approx(*a.mean + shift).epsilon(1e-9));
    CHECK(b.sd == doctest::Approx(a.sd).epsilon(1e-9));
  }
}

TEST_CASE("stats json round trip and band mismatch") {
  Rng rng(37);
  const auto spec = default_band_spec();
  const auto stats = band_stats(spec, random_catalog(rng, 100));
  const auto back = stats_from_json(stats_to_json(spec, stats), spec);
  for (std::size_t b = 0; b < spec.size(); ++b) {
    CHECK(back.bands[b].count == stats.bands[b].count);
    CHECK(back.bands[b].mean == stats.bands[b].mean);
    CHECK(back.bands[b].sd == stats.bands[b].sd);
  }
  const PriceBandSpec other({{"CHEAP", 0, 10000}, {"DEAR", 10000, kInfinity}});
  CHECK_THROWS_AS(stats_from_json(stats_to_json(spec, stats), other), ConfigError);
  CHECK_THROWS_AS(stats_from_json(json::parse(R"({"format":"x"})"), spec), PersistenceError);
}

TEST_CASE("stats lookup by name") {
  const auto spec = default_band_spec();
  Dataset ds;
  ds.records.push_back({"a", "", {}, 4399, std::nullopt});
  const auto stats = band_stats(spec, ds);
  CHECK(stats.at("LOW").count == 1);
  CHECK(stats.at("PREMIUM").count == 0);
}
