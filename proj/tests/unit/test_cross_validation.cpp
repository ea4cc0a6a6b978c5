#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "salesig/errors.hpp"
#include "salesig/svm/cross_validation.hpp"
#include "salesig/synth.hpp"

using namespace salesig;
using namespace salesig::svm;

namespace {

Dataset catalog(std::vector<std::size_t> counts, std::uint64_t seed = 42) {
  SynthOptions o;
  o.seed = seed;
  o.counts = std::move(counts);
  o.null_rows = o.duplicate_rows = 0;
  return synthesize(o).nonsale;
}

GridEntry entry(KernelKind kind, double c) {
  GridEntry g;
  g.kernel.kind = kind;
  g.c = c;
  return g;
}

}  // namespace

TEST_CASE("five folds over 100 records hold 20 each") {
  const auto ds = catalog({40, 30, 20, 10});
  const auto folds = stratified_folds(ds, default_band_spec(), 5, 3);
  std::vector<int> sizes(5, 0);
  for (auto f : folds) ++sizes[f];
  CHECK(sizes == std::vector<int>{20, 20, 20, 20, 20});
}

TEST_CASE("folds are stratified and seeded") {
  const auto bands = default_band_spec();
  const auto ds = catalog({41, 33, 17, 9});
  const auto a = stratified_folds(ds, bands, 4, 9);
  CHECK(a == stratified_folds(ds, bands, 4, 9));
  CHECK(a != stratified_folds(ds, bands, 4, 10));
  for (std::size_t b = 0; b < bands.size(); ++b) {
    std::vector<int> per(4, 0);
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (bands.assign_index(ds.records[i].original_price) == b) ++per[a[i]];
    const auto [lo, hi] = std::minmax_element(per.begin(), per.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("a band smaller than the fold count is named in the error") {
  const auto ds = catalog({20, 20, 20, 3});
  try {
    stratified_folds(ds, default_band_spec(), 5, 1);
    FAIL("expected a contract error");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("PREMIUM") != std::string::npos);
  }
  CHECK_THROWS_AS(stratified_folds(ds, default_band_spec(), 1, 1), ContractError);
}

TEST_CASE("duplicate grid entries score identically and ranking is sorted") {
  const auto ds = catalog({30, 20, 15, 10});
  const std::vector<GridEntry> grid{entry(KernelKind::Rbf, 1.0), entry(KernelKind::Linear, 1.0),
                                    entry(KernelKind::Rbf, 1.0)};
  const auto scores = cross_validate(ds, default_band_spec(), grid, 5, 7);
  REQUIRE(scores.size() == 3);
  for (std::size_t i = 1; i < scores.size(); ++i)
    CHECK(scores[i - 1].mean_accuracy >= scores[i].mean_accuracy);
  const CvScore* first = nullptr;
  const CvScore* third = nullptr;
  for (const auto& s : scores) {
    if (s.grid_index == 0) first = &s;
    if (s.grid_index == 2) third = &s;
  }
  REQUIRE(first);
  REQUIRE(third);
  CHECK(first->fold_accuracies == third->fold_accuracies);
}

TEST_CASE("fold accuracies match a direct recount") {
  const auto bands = default_band_spec();
  const auto ds = catalog({30, 20, 15, 10}, 5);
  const std::vector<GridEntry> grid{entry(KernelKind::Rbf, 1.0)};
  const auto scores = cross_validate(ds, bands, grid, 5, 13);
  const auto folds = stratified_folds(ds, bands, 5, 13);
  REQUIRE(scores.front().fold_accuracies.size() == 5);
  for (std::size_t f = 0; f < 5; ++f) {
    Dataset train, held;
    for (std::size_t i = 0; i < ds.size(); ++i) (folds[i] == f ? held : train).records.push_back(ds.records[i]);
    const auto m = train_multiclass(train, bands, TrainOptions{});
    std::size_t right = 0;
    for (const auto& r : held.records) right += predict_band(m, r.features) == bands.assign(r.original_price);
    CHECK(scores.front().fold_accuracies[f] == static_cast<double>(right) / static_cast<double>(held.size()));
  }
  const auto& acc = scores.front().fold_accuracies;
  CHECK(scores.front().mean_accuracy ==
        doctest::Approx(std::accumulate(acc.begin(), acc.end(), 0.0) / 5.0).epsilon(1e-12));
}

TEST_CASE("grid files") {
  const auto grid = grid_from_json(nlohmann::json::parse(
      R"([{"kernel":"rbf","c":10,"gamma":"auto"},{"kernel":"poly","c":1,"gamma":0.5,"degree":2,"coef0":1}])"));
  REQUIRE(grid.size() == 2);
  CHECK(grid[0].auto_gamma);
  CHECK(grid[0].c == 10.0);
  CHECK_FALSE(grid[1].auto_gamma);
  CHECK(grid[1].kernel.kind == KernelKind::Polynomial);
  CHECK(grid[1].kernel.gamma == 0.5);
  CHECK(grid[1].kernel.degree == 2);
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::array()), ConfigError);
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"([{"kernel":"rbf","c":-1}])")), ConfigError);
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"([{"kernel":"tree","c":1}])")), ConfigError);
}
