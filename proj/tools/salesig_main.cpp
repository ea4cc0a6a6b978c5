// salesig: price-band SVM and discount significance pipeline.
//
//   salesig synth   --seed 42 --output data/
//   salesig stats   --catalog data/nonsale.csv
//   salesig train   --catalog data/nonsale.csv --kernel rbf --seed 42 --model model.json
//   salesig analyze --model model.json --sale data/sale.csv --catalog data/nonsale.csv
//   salesig extract --rules rules.json --snapshots pages/ --output raw.csv

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "salesig/catalog.hpp"
#include "salesig/errors.hpp"
#include "salesig/extract.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/report.hpp"
#include "salesig/significance.hpp"
#include "salesig/svm/cross_validation.hpp"
#include "salesig/svm/model_io.hpp"
#include "salesig/synth.hpp"
#include "salesig/text.hpp"

namespace {

using namespace salesig;
using nlohmann::json;

// Stage name reported in the one-line diagnostic on failure.
std::string g_stage = "setup";

void stage(const char* s) { g_stage = s; }

PriceBandSpec bands_or_default(const std::string& path) {
  return path.empty() ? default_band_spec() : load_band_spec(path);
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    write_file(path, contents);
  }
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
  std::string rules;
  std::string snapshots;
  std::string output;
};

int cmd_extract(const ExtractArgs& a) {
  stage("rules");
  const RuleSet rules = load_rules(a.rules);
  stage("extract");
  const auto records = extract_corpus(a.snapshots, rules);
  stage("write");
  emit(a.output, raw_records_csv(records));
  std::cerr << "extracted " << records.size() << " records\n";
  return 0;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  std::string catalog;
  std::string bands;
  std::string output;
};

int cmd_stats(const StatsArgs& a) {
  stage("bands");
  const auto bands = bands_or_default(a.bands);
  stage("load");
  const auto raw = load_catalog_csv(a.catalog);
  stage("clean");
  const auto cleaned = clean(raw);
  stage("stats");
  const auto stats = band_stats(bands, cleaned.dataset);
  std::cout << format_stats_table(bands, stats);
  std::cout << "records: " << cleaned.report.output << " (input " << cleaned.report.input
            << ", null-dropped " << cleaned.report.null_dropped << ", duplicates "
            << cleaned.report.dedup_dropped << ")\n";
  if (!a.output.empty()) {
    stage("write");
    auto j = stats_to_json(bands, stats);
    j["clean"] = clean_report_to_json(cleaned.report);
    write_file(a.output, j.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string catalog;
  std::string bands;
  std::string model;
  std::string output;
  std::string kernel = "rbf";
  std::string gamma = "auto";
  std::string class_weight = "none";
  double c = 1.0;
  int degree = 3;
  double coef0 = 0.0;
  double tol = 1e-3;
  std::size_t cv = 0;
  std::string grid;
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
};

std::vector<svm::GridEntry> default_grid() {
  std::vector<svm::GridEntry> grid;
  for (auto kind : {svm::KernelKind::Linear, svm::KernelKind::Polynomial, svm::KernelKind::Rbf,
                    svm::KernelKind::Sigmoid}) {
    for (double c : {0.1, 1.0, 10.0}) {
      svm::GridEntry g;
      g.kernel.kind = kind;
      g.c = c;
      grid.push_back(g);
    }
  }
  return grid;
}

int cmd_train(const TrainArgs& a) {
  stage("options");
  const auto bands = bands_or_default(a.bands);
  svm::TrainOptions opts;
  opts.kernel.kind = svm::parse_kernel_kind(a.kernel);
  opts.kernel.degree = a.degree;
  opts.kernel.coef0 = a.coef0;
  opts.c = a.c;
  if (!(a.c > 0.0)) throw ConfigError("--c must be positive");
  opts.smo.tol = a.tol;
  opts.weighting = svm::parse_class_weighting(a.class_weight);
  if (a.gamma != "auto") {
    auto g = parse_number(a.gamma);
    if (!g || !(*g > 0.0)) throw ConfigError("--gamma must be 'auto' or a positive number");
    opts.kernel.gamma = *g;
    opts.auto_gamma = false;
  }

  stage("load");
  const auto raw = load_catalog_csv(a.catalog);
  stage("clean");
  const auto cleaned = clean(raw);
  stage("split");
  const auto split = stratified_split(cleaned.dataset, bands, a.train_fraction, a.seed);

  json cv_json = json::array();
  if (a.cv > 0) {
    stage("cross-validate");
    const auto grid = a.grid.empty() ? default_grid() : svm::load_grid(a.grid);
    const auto ranking = svm::cross_validate(split.train, bands, grid, a.cv, a.seed, opts);
    std::cout << "cross-validation (" << a.cv << " folds):\n";
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      const auto& s = ranking[r];
      std::cout << "  " << (r + 1) << ". " << s.entry.label() << "  mean accuracy "
                << fixed(s.mean_accuracy) << "\n";
      cv_json.push_back({{"rank", r + 1},
                         {"grid_index", s.grid_index},
                         {"config", s.entry.label()},
                         {"mean_accuracy", s.mean_accuracy},
                         {"fold_accuracies", s.fold_accuracies}});
    }
    const auto& best = ranking.front().entry;
    opts.kernel = best.kernel;
    opts.auto_gamma = best.auto_gamma;
    opts.c = best.c;
    std::cout << "selected: " << best.label() << "\n";
  }

  stage("train");
  const auto model = svm::train_multiclass(split.train, bands, opts);
  stage("evaluate");
  const double train_acc = svm::accuracy(model, bands, split.train);
  const double test_acc = svm::accuracy(model, bands, split.test);

  stage("write");
  svm::save_model(model, a.model);

  std::cout << "records: " << cleaned.report.output << " (train " << split.train.size()
            << ", holdout " << split.test.size() << ")\n";
  std::cout << "train accuracy: " << fixed(train_acc) << "\n";
  std::cout << "holdout accuracy: " << fixed(test_acc) << "\n";

  if (!a.output.empty()) {
    json config = {{"catalog", a.catalog},
                   {"bands", band_spec_to_json(bands)},
                   {"kernel", svm::kernel_to_json(model.binaries.front().kernel)},
                   {"c", opts.c},
                   {"gamma_mode", opts.auto_gamma ? "auto" : "fixed"},
                   {"class_weight", a.class_weight},
                   {"tol", a.tol},
                   {"cv_folds", a.cv},
                   {"grid", a.grid},
                   {"train_fraction", a.train_fraction},
                   {"seed", a.seed}};
    json metrics = {{"format", "salesig-train-metrics"},
                    {"version", kReportVersion},
                    {"config", config},
                    {"clean", clean_report_to_json(cleaned.report)},
                    {"train_size", split.train.size()},
                    {"holdout_size", split.test.size()},
                    {"train_accuracy", train_acc},
                    {"holdout_accuracy", test_acc},
                    {"cross_validation", cv_json}};
    write_file(a.output, metrics.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string model;
  std::string sale;
  std::string catalog;
  std::string stats;
  std::string bands;
  std::string policy;
  double k = 0.0;  // 0: keep the policy's k
  bool graded = false;
  std::string output;
  std::string verdicts_csv;
};

int cmd_analyze(const AnalyzeArgs& a) {
  stage("model");
  const auto model = svm::load_model(a.model);
  stage("bands");
  PriceBandSpec bands = !a.bands.empty() ? load_band_spec(a.bands)
                        : model.bands    ? *model.bands
                                         : default_band_spec();
  if (model.class_names != bands.names()) {
    throw ConfigError("model classes do not match the band spec");
  }
  if (model.bands && !(*model.bands == bands)) {
    throw ConfigError("model band bounds do not match the band spec");
  }

  stage("policy");
  SignificancePolicy policy = a.policy.empty() ? SignificancePolicy{} : load_policy(a.policy);
  if (a.k != 0.0) policy.k = a.k;
  if (a.graded) policy.graded_cross_class = true;
  policy.validate();

  stage("stats");
  PriceBandStats stats;
  std::optional<CleanReport> nonsale_clean;
  if (!a.stats.empty()) {
    json j;
    try {
      j = json::parse(read_file(a.stats));
    } catch (const json::parse_error& e) {
      throw PersistenceError("stats file '" + a.stats + "': " + e.what());
    }
    stats = stats_from_json(j, bands);
  } else if (!a.catalog.empty()) {
    const auto cleaned = clean(load_catalog_csv(a.catalog));
    nonsale_clean = cleaned.report;
    stats = band_stats(bands, cleaned.dataset);
  } else {
    throw ConfigError("analyze needs --catalog or --stats for band statistics");
  }

  stage("sale");
  const auto sale_raw = load_catalog_csv(a.sale);
  Dataset sale;
  sale.provenance = sale_raw.provenance;
  Classification incomplete;
  for (const auto& row : sale_raw.rows) {
    RawCatalog one;
    one.rows.push_back(row);
    if (clean(one).report.output == 1) {
      sale.records.push_back(to_dataset(one).records.front());
    } else {
      incomplete.rejects.push_back({row.id, "missing feature or price values"});
    }
  }

  stage("classify");
  auto classification = classify_dataset(policy, bands, stats, model, sale);
  // Keep rejects in file order: incomplete rows and classification failures
  // are merged by their position in the sale file.
  std::vector<Reject> merged;
  {
    std::size_t ii = 0, ci = 0;
    for (const auto& row : sale_raw.rows) {
      if (ii < incomplete.rejects.size() && incomplete.rejects[ii].id == row.id) {
        merged.push_back(incomplete.rejects[ii++]);
      } else if (ci < classification.rejects.size() && classification.rejects[ci].id == row.id) {
        merged.push_back(classification.rejects[ci++]);
      }
    }
  }
  classification.rejects = std::move(merged);

  stage("report");
  auto report = build_report(bands, stats, policy, std::move(classification));
  report.clean = nonsale_clean;
  report.config_echo = {{"model", a.model},
                        {"sale", a.sale},
                        {"catalog", a.catalog},
                        {"stats", a.stats},
                        {"bands", band_spec_to_json(bands)},
                        {"sale_records", sale_raw.rows.size()}};

  stage("write");
  const std::string doc = report_to_json(report).dump(2) + "\n";
  if (a.output.empty()) {
    std::cout << doc;
  } else {
    write_file(a.output, doc);
    std::cout << format_summary(report.summary);
    if (!report.classification.rejects.empty()) {
      std::cout << "rejected: " << report.classification.rejects.size() << "\n";
    }
  }
  if (!a.verdicts_csv.empty()) write_file(a.verdicts_csv, verdicts_csv(report.classification.verdicts));
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string output;
  std::string bands;
  std::string counts;
  SynthOptions opts;
};

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_number(item);
    if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
      throw ConfigError("--counts must be a comma-separated list of non-negative integers");
    }
    out.push_back(static_cast<std::size_t>(*v));
  }
  return out;
}

int cmd_synth(SynthArgs a) {
  stage("options");
  a.opts.bands = bands_or_default(a.bands);
  if (!a.counts.empty()) a.opts.counts = parse_counts(a.counts);
  stage("generate");
  const auto out = synthesize(a.opts);
  stage("write");
  std::filesystem::create_directories(a.output);
  const std::filesystem::path dir(a.output);
  write_file((dir / "nonsale.csv").string(), format_catalog_csv(out.nonsale));
  write_file((dir / "sale.csv").string(), format_catalog_csv(out.sale));
  write_file((dir / "raw.csv").string(), format_catalog_csv(out.raw));
  std::cout << "wrote " << out.nonsale.size() << " records (raw " << out.raw.rows.size()
            << ") to " << a.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discount significance from price bands and a one-vs-rest SVM"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract catalog rows from stored HTML snapshots");
  extract->add_option("--rules", ex.rules, "Extraction rule JSON")->required();
  extract->add_option("--snapshots", ex.snapshots, "Directory of snapshot files")->required();
  extract->add_option("--output", ex.output, "CSV output (default stdout)");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Per-band price statistics of a catalog");
  stats->add_option("--catalog", st.catalog, "Catalog CSV")->required();
  stats->add_option("--bands", st.bands, "Band spec JSON");
  stats->add_option("--output", st.output, "Stats JSON output");

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train the price-band classifier");
  train->add_option("--catalog", tr.catalog, "Non-sale catalog CSV")->required();
  train->add_option("--model", tr.model, "Model JSON output")->required();
  train->add_option("--bands", tr.bands, "Band spec JSON");
  train->add_option("--kernel", tr.kernel, "linear|poly|rbf|sigmoid")->capture_default_str();
  train->add_option("--c", tr.c, "Soft-margin penalty")->capture_default_str();
  train->add_option("--gamma", tr.gamma, "Kernel gamma or 'auto'")->capture_default_str();
  train->add_option("--degree", tr.degree, "Polynomial degree")->capture_default_str();
  train->add_option("--coef0", tr.coef0, "Polynomial/sigmoid offset")->capture_default_str();
  train->add_option("--tol", tr.tol, "Solver KKT tolerance")->capture_default_str();
  train->add_option("--class-weight", tr.class_weight, "none|balanced")->capture_default_str();
  train->add_option("--cv", tr.cv, "Cross-validation folds (0 disables)")->capture_default_str();
  train->add_option("--grid", tr.grid, "Hyperparameter grid JSON");
  train->add_option("--train-fraction", tr.train_fraction, "Training share")->capture_default_str();
  train->add_option("--seed", tr.seed, "Split and fold seed")->capture_default_str();
  train->add_option("--output", tr.output, "Metrics JSON output");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Classify sale discounts into significance classes");
  analyze->add_option("--model", an.model, "Model JSON")->required();
  analyze->add_option("--sale", an.sale, "Sale catalog CSV")->required();
  analyze->add_option("--catalog", an.catalog, "Non-sale catalog CSV for band statistics");
  analyze->add_option("--stats", an.stats, "Stats JSON (instead of --catalog)");
  analyze->add_option("--bands", an.bands, "Band spec JSON");
  analyze->add_option("--policy", an.policy, "Significance policy JSON");
  analyze->add_option("--k", an.k, "Fold width multiplier (default 0.5)");
  analyze->add_flag("--graded", an.graded, "Report how many bands cross-class deals dropped");
  analyze->add_option("--output", an.output, "Report JSON output (default stdout)");
  analyze->add_option("--verdicts-csv", an.verdicts_csv, "Flat CSV of verdicts");

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Generate synthetic non-sale and sale catalogs");
  synth->add_option("--output", sy.output, "Output directory")->required();
  synth->add_option("--seed", sy.opts.seed, "Generator seed")->capture_default_str();
  synth->add_option("--bands", sy.bands, "Band spec JSON");
  synth->add_option("--counts", sy.counts, "Records per band, e.g. 426,204,76,27");
  synth->add_option("--feature-noise", sy.opts.feature_noise)->capture_default_str();
  synth->add_option("--no-discount-rate", sy.opts.no_discount_rate)->capture_default_str();
  synth->add_option("--mean-discount", sy.opts.mean_discount)->capture_default_str();
  synth->add_option("--max-discount", sy.opts.max_discount)->capture_default_str();
  synth->add_option("--increase-rate", sy.opts.increase_rate)->capture_default_str();
  synth->add_option("--null-rows", sy.opts.null_rows)->capture_default_str();
  synth->add_option("--duplicate-rows", sy.opts.duplicate_rows)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (*extract) return cmd_extract(ex);
    if (*stats) return cmd_stats(st);
    if (*train) return cmd_train(tr);
    if (*analyze) return cmd_analyze(an);
    if (*synth) return cmd_synth(sy);
  } catch (const Error& e) {
    std::cerr << "salesig " << cmd << ": [" << g_stage << "] " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "salesig " << cmd << ": [" << g_stage << "] " << e.what() << "\n";
    return 2;
  }
  return 0;
}
