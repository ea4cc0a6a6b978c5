#include "salesig/svm/cross_validation.hpp"

#include <algorithm>
#include <sstream>

#include "salesig/errors.hpp"
#include "salesig/random.hpp"
#include "salesig/text.hpp"

namespace salesig::svm {

std::string GridEntry::label() const {
  std::ostringstream os;
  os << to_string(kernel.kind) << " C=" << format_number(c);
  if (kernel.kind != KernelKind::Linear) {
    os << " gamma=" << (auto_gamma ? std::string("auto") : format_number(kernel.gamma));
  }
  if (kernel.kind == KernelKind::Polynomial) os << " degree=" << kernel.degree;
  if (kernel.kind == KernelKind::Polynomial || kernel.kind == KernelKind::Sigmoid) {
    os << " coef0=" << format_number(kernel.coef0);
  }
  return os.str();
}

std::vector<std::size_t> stratified_folds(const Dataset& ds, const PriceBandSpec& bands,
                                          std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ContractError("cross-validation needs at least 2 folds");
  std::vector<std::vector<std::size_t>> members(bands.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    members[bands.assign_index(ds.records[i].original_price)].push_back(i);
  }
  for (std::size_t b = 0; b < bands.size(); ++b) {
    if (members[b].size() < folds) {
      throw ContractError("band '" + bands[b].name + "' has " + std::to_string(members[b].size()) +
                          " records, fewer than " + std::to_string(folds) + " folds");
    }
  }
  Rng rng(seed);
  std::vector<std::size_t> fold_of(ds.size());
  std::size_t dealt = 0;
  for (auto& band : members) {
    rng.shuffle(band);
    for (std::size_t idx : band) fold_of[idx] = dealt++ % folds;
  }
  return fold_of;
}

std::vector<CvScore> cross_validate(const Dataset& ds, const PriceBandSpec& bands,
                                    const std::vector<GridEntry>& grid, std::size_t folds,
                                    std::uint64_t seed, const TrainOptions& base) {
  if (grid.empty()) throw ConfigError("empty hyperparameter grid");
  const auto fold_of = stratified_folds(ds, bands, folds, seed);

  std::vector<Split> splits(folds);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t f = 0; f < folds; ++f) {
      (fold_of[i] == f ? splits[f].test : splits[f].train).records.push_back(ds.records[i]);
    }
  }

  std::vector<CvScore> scores;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    TrainOptions opts = base;
    opts.kernel = grid[g].kernel;
    opts.auto_gamma = grid[g].auto_gamma;
    opts.c = grid[g].c;

    CvScore s;
    s.entry = grid[g];
    s.grid_index = g;
    double sum = 0.0;
    for (const auto& split : splits) {
      const auto model = train_multiclass(split.train, bands, opts);
      const double acc = accuracy(model, bands, split.test);
      s.fold_accuracies.push_back(acc);
      sum += acc;
    }
    s.mean_accuracy = sum / static_cast<double>(folds);
    scores.push_back(std::move(s));
  }
  std::stable_sort(scores.begin(), scores.end(), [](const CvScore& a, const CvScore& b) {
    return a.mean_accuracy > b.mean_accuracy;
  });
  return scores;
}

std::vector<GridEntry> grid_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("grid must be a non-empty JSON array");
  std::vector<GridEntry> out;
  try {
    for (const auto& e : j) {
      GridEntry g;
      g.kernel.kind = parse_kernel_kind(e.at("kernel").get<std::string>());
      g.c = e.value("c", 1.0);
      if (!(g.c > 0.0)) throw ConfigError("grid entry C must be positive");
      if (e.contains("gamma") && !(e.at("gamma").is_string() && e.at("gamma") == "auto")) {
        g.kernel.gamma = e.at("gamma").get<double>();
        g.auto_gamma = false;
      }
      g.kernel.degree = e.value("degree", 3);
      g.kernel.coef0 = e.value("coef0", 0.0);
      if (!g.auto_gamma) g.kernel.validate();
      out.push_back(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed grid entry: ") + e.what());
  }
  return out;
}

std::vector<GridEntry> load_grid(const std::string& path) {
  try {
    return grid_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("grid '" + path + "': " + e.what());
  }
}

}  // namespace salesig::svm
