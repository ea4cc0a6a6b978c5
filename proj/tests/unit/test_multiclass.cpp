#include <cmath>

#include "doctest.h"
#include "salesig/errors.hpp"
#include "salesig/svm/multiclass.hpp"
#include "salesig/synth.hpp"

using namespace salesig;
using namespace salesig::svm;

namespace {

Dataset small_catalog(std::uint64_t seed = 42) {
  SynthOptions o;
  o.seed = seed;
  o.counts = {40, 30, 20, 12};
  o.null_rows = 0;
  o.duplicate_rows = 0;
  return synthesize(o).nonsale;
}

}  // namespace

TEST_CASE("one binary model per band, in band order") {
  const auto bands = default_band_spec();
  const auto m = train_multiclass(small_catalog(), bands, TrainOptions{});
  CHECK(m.class_names == bands.names());
  CHECK(m.binaries.size() == 4);
  REQUIRE(m.bands.has_value());
  CHECK(*m.bands == bands);
}

TEST_CASE("training accuracy on separable-ish data is high") {
  const auto bands = default_band_spec();
  const auto ds = small_catalog();
  TrainOptions opts;
  opts.c = 10.0;
  const auto m = train_multiclass(ds, bands, opts);
  CHECK(accuracy(m, bands, ds) > 0.8);
}

TEST_CASE("parallel and sequential training agree bit for bit") {
  const auto bands = default_band_spec();
  const auto ds = small_catalog(7);
  TrainOptions par, seq;
  seq.parallel = false;
  const auto a = train_multiclass(ds, bands, par);
  const auto b = train_multiclass(ds, bands, seq);
  CHECK(a.binaries == b.binaries);
  CHECK(a.scaler == b.scaler);
}

TEST_CASE("a band with no training records is a contract error") {
  SynthOptions o;
  o.counts = {10, 10, 10, 0};
  o.null_rows = o.duplicate_rows = 0;
  CHECK_THROWS_AS(train_multiclass(synthesize(o).nonsale, default_band_spec(), TrainOptions{}),
                  ContractError);
}

TEST_CASE("argmax ties go to the lowest class index") {
  MulticlassSvmModel m;
  m.scaler = {{0.0, 0.0, 0.0, 0.0, 0.0}, {1, 1, 1, 1, 1}, {false, false, false, false, false}};
  m.class_names = {"A", "B", "C"};
  for (double bias : {0.5, 0.5, 0.2}) {
    BinarySvmModel b;
    b.kernel = {KernelKind::Linear};
    b.bias = bias;
    m.binaries.push_back(b);
  }
  CHECK(predict_band(m, FeatureVector{}) == "A");
  m.binaries[2].bias = 0.6;
  CHECK(predict_band(m, FeatureVector{}) == "C");
}

TEST_CASE("predictions survive a common shift and positive scale of all decisions") {
  const auto bands = default_band_spec();
  const auto ds = small_catalog(11);
  const auto m = train_multiclass(ds, bands, TrainOptions{});
  auto shifted = m;
  for (auto& b : shifted.binaries) {
    for (auto& c : b.dual_coefs) c *= 3.0;
    b.bias = 3.0 * b.bias + 1.25;
  }
  for (const auto& r : ds.records) CHECK(predict_band(m, r.features) == predict_band(shifted, r.features));
}

TEST_CASE("auto gamma is one over dims times mean variance") {
  const std::vector<Point> scaled{{1.0, -1.0}, {-1.0, 1.0}};
  // sample variance of each column is 2
  CHECK(default_gamma(scaled) == doctest::Approx(1.0 / (2.0 * 2.0)));
  CHECK(default_gamma({{0.0, 0.0}, {0.0, 0.0}}) == doctest::Approx(0.5));
}

TEST_CASE("non-finite features are rejected at prediction") {
  const auto m = train_multiclass(small_catalog(), default_band_spec(), TrainOptions{});
  FeatureVector f{4, 64, 8, 48, std::nan("")};
  CHECK_THROWS_AS(predict_band(m, f), DataError);
}

TEST_CASE("balanced weighting sets per-class weights from class sizes") {
  const auto bands = default_band_spec();
  const auto ds = small_catalog();
  TrainOptions opts;
  opts.weighting = ClassWeighting::Balanced;
  const auto m = train_multiclass(ds, bands, opts);
  // PREMIUM: 12 of 102 records
  CHECK(m.binaries[3].positive_weight == doctest::Approx(102.0 / (2.0 * 12.0)));
  CHECK(m.binaries[3].negative_weight == doctest::Approx(102.0 / (2.0 * 90.0)));
  CHECK(parse_class_weighting("balanced") == ClassWeighting::Balanced);
  CHECK_THROWS_AS(parse_class_weighting("auto"), ConfigError);
}

TEST_CASE("accuracy of an empty dataset is zero") {
  const auto m = train_multiclass(small_catalog(), default_band_spec(), TrainOptions{});
  CHECK(accuracy(m, default_band_spec(), Dataset{}) == 0.0);
}
