#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "salesig/svm/multiclass.hpp"

namespace salesig::svm {

struct GridEntry {
  KernelConfig kernel;
  bool auto_gamma = true;
  double c = 1.0;

  std::string label() const;
};

struct CvScore {
  GridEntry entry;
  std::size_t grid_index = 0;
  double mean_accuracy = 0.0;
  std::vector<double> fold_accuracies;
};

// Fold id per record. Each band is shuffled with the seeded generator, then
// the band lists are concatenated in spec order and dealt round-robin, so
// fold sizes differ by at most one overall and per band.
// ContractError naming the band when a band has fewer records than folds.
std::vector<std::size_t> stratified_folds(const Dataset& ds, const PriceBandSpec& bands,
                                          std::size_t folds, std::uint64_t seed);

// Mean held-out accuracy per grid entry over the same folds, sorted
// descending; ties keep grid order.
std::vector<CvScore> cross_validate(const Dataset& ds, const PriceBandSpec& bands,
                                    const std::vector<GridEntry>& grid, std::size_t folds,
                                    std::uint64_t seed, const TrainOptions& base = {});

// [{"kernel": "rbf", "c": 1, "gamma": 0.5 | "auto", "degree": 3, "coef0": 0}, ...]
std::vector<GridEntry> grid_from_json(const nlohmann::json& j);
std::vector<GridEntry> load_grid(const std::string& path);

}  // namespace salesig::svm
