#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "salesig/catalog.hpp"
#include "salesig/pricebands.hpp"
#include "salesig/significance.hpp"

namespace salesig {

inline constexpr int kReportVersion = 1;

// Bands x significance classes. Columns run from the cross-class name down
// through the fold names in reverse (EXCELLENT, GOOD, ACCEPTABLE, POOR by
// default). A verdict is counted in the row of its listed (original price)
// band.
struct SummaryMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<std::size_t> row_totals;
  std::vector<std::size_t> column_totals;
  std::size_t grand_total = 0;
};

SummaryMatrix summarize(const SignificancePolicy& policy, const PriceBandSpec& bands,
                        const std::vector<SignificanceVerdict>& verdicts);

struct RunReport {
  PriceBandSpec bands;
  PriceBandStats stats;
  SignificancePolicy policy;
  SummaryMatrix summary;
  Classification classification;
  std::optional<CleanReport> clean;
  nlohmann::json config_echo = nlohmann::json::object();
};

RunReport build_report(const PriceBandSpec& bands, const PriceBandStats& stats,
                       const SignificancePolicy& policy, Classification classification);

nlohmann::json clean_report_to_json(const CleanReport& r);
nlohmann::json verdict_to_json(const SignificanceVerdict& v, bool graded);
nlohmann::json report_to_json(const RunReport& r);

// id,predicted_band,sale_price_band,listed_band,discount,fold,x_levels,class_name,anomalies
std::string verdicts_csv(const std::vector<SignificanceVerdict>& verdicts);

// Fixed-width text rendering of the stats table and summary matrix.
std::string format_stats_table(const PriceBandSpec& bands, const PriceBandStats& stats);
std::string format_summary(const SummaryMatrix& m);

}  // namespace salesig
