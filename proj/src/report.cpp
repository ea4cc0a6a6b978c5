#include "salesig/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "salesig/errors.hpp"
#include "salesig/text.hpp"

namespace salesig {

using nlohmann::json;

SummaryMatrix summarize(const SignificancePolicy& policy, const PriceBandSpec& bands,
                        const std::vector<SignificanceVerdict>& verdicts) {
  SummaryMatrix m;
  m.rows = bands.names();
  m.columns.push_back(policy.cross_class_name);
  for (auto it = policy.fold_names.rbegin(); it != policy.fold_names.rend(); ++it) {
    m.columns.push_back(*it);
  }
  m.cells.assign(m.rows.size(), std::vector<std::size_t>(m.columns.size(), 0));
  m.row_totals.assign(m.rows.size(), 0);
  m.column_totals.assign(m.columns.size(), 0);

  for (const auto& v : verdicts) {
    const std::size_t r = bands.index_of(v.listed_band);
    std::size_t c = 0;
    while (c < m.columns.size() && m.columns[c] != v.class_name) ++c;
    if (c == m.columns.size()) {
      throw ConfigError("verdict class '" + v.class_name + "' is not in the policy");
    }
    ++m.cells[r][c];
    ++m.row_totals[r];
    ++m.column_totals[c];
    ++m.grand_total;
  }
  return m;
}

RunReport build_report(const PriceBandSpec& bands, const PriceBandStats& stats,
                       const SignificancePolicy& policy, Classification classification) {
  RunReport r{bands, stats, policy, summarize(policy, bands, classification.verdicts),
              std::move(classification), std::nullopt, json::object()};
  return r;
}

json clean_report_to_json(const CleanReport& r) {
  return {{"input", r.input},
          {"null_dropped", r.null_dropped},
          {"dedup_dropped", r.dedup_dropped},
          {"output", r.output}};
}

json verdict_to_json(const SignificanceVerdict& v, bool graded) {
  json j = {{"id", v.id},
            {"predicted_band", v.predicted_band},
            {"sale_price_band", v.sale_price_band},
            {"listed_band", v.listed_band},
            {"discount", v.discount},
            {"fold", v.fold ? json(*v.fold) : json("inf")},
            {"class_name", v.class_name},
            {"anomalies", v.anomalies.names()}};
  if (graded) j["x_levels"] = v.x_levels;
  return j;
}

json report_to_json(const RunReport& r) {
  json stats_table = json::array();
  for (std::size_t i = 0; i < r.bands.size(); ++i) {
    const auto& b = r.bands[i];
    const auto& s = r.stats.bands.at(i);
    stats_table.push_back({{"band", b.name},
                           {"lower", b.lower},
                           {"upper", std::isinf(b.upper) ? json(nullptr) : json(b.upper)},
                           {"count", s.count},
                           {"mean", s.mean ? json(*s.mean) : json(nullptr)},
                           {"sd", s.sd},
                           {"degenerate_sd", s.degenerate()}});
  }

  json rows = json::array();
  for (std::size_t i = 0; i < r.summary.rows.size(); ++i) {
    rows.push_back({{"band", r.summary.rows[i]},
                    {"counts", r.summary.cells[i]},
                    {"total", r.summary.row_totals[i]}});
  }
  json matrix = {{"columns", r.summary.columns},
                 {"rows", rows},
                 {"column_totals", r.summary.column_totals},
                 {"grand_total", r.summary.grand_total}};

  const bool graded = r.policy.graded_cross_class;
  if (graded) {
    std::map<std::size_t, std::size_t> grades;
    for (const auto& v : r.classification.verdicts) {
      if (v.cross_class()) ++grades[v.x_levels];
    }
    json g = json::array();
    for (const auto& [x, n] : grades) g.push_back({{"x_levels", x}, {"count", n}});
    matrix["cross_class_grades"] = g;
  }

  json verdicts = json::array();
  for (const auto& v : r.classification.verdicts) verdicts.push_back(verdict_to_json(v, graded));
  json rejects = json::array();
  for (const auto& x : r.classification.rejects) rejects.push_back({{"id", x.id}, {"reason", x.reason}});

  json j = {{"format", "salesig-report"},
            {"version", kReportVersion},
            {"config", r.config_echo},
            {"policy", policy_to_json(r.policy)},
            {"stats_table", stats_table},
            {"summary_matrix", matrix},
            {"verdicts", verdicts},
            {"rejects", rejects}};
  if (r.clean) j["clean"] = clean_report_to_json(*r.clean);
  return j;
}

std::string verdicts_csv(const std::vector<SignificanceVerdict>& verdicts) {
  std::string out = csv::encode_row({"id", "predicted_band", "sale_price_band", "listed_band",
                                     "discount", "fold", "x_levels", "class_name", "anomalies"});
  for (const auto& v : verdicts) {
    std::string anomalies;
    for (const auto& a : v.anomalies.names()) {
      if (!anomalies.empty()) anomalies += ';';
      anomalies += a;
    }
    out += csv::encode_row({v.id, v.predicted_band, v.sale_price_band, v.listed_band,
                            format_number(v.discount), v.fold ? std::to_string(*v.fold) : "inf",
                            std::to_string(v.x_levels), v.class_name, anomalies});
  }
  return out;
}

std::string format_stats_table(const PriceBandSpec& bands, const PriceBandStats& stats) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %-12s %8s %12s %12s\n", "price range", "class", "count",
                "mean", "sd");
  os << line;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    const auto& s = stats.bands.at(i);
    std::string range = b.lower == 0.0 ? "(0, " : "[" + format_number(b.lower) + ", ";
    range += std::isinf(b.upper) ? std::string("inf)") : format_number(b.upper) + ")";
    if (s.mean) {
      std::snprintf(line, sizeof line, "%-22s %-12s %8zu %12.2f %12.2f\n", range.c_str(),
                    b.name.c_str(), s.count, *s.mean, s.sd);
    } else {
      std::snprintf(line, sizeof line, "%-22s %-12s %8zu %12s %12.2f\n", range.c_str(),
                    b.name.c_str(), s.count, "-", s.sd);
    }
    os << line;
  }
  return os.str();
}

std::string format_summary(const SummaryMatrix& m) {
  std::ostringstream os;
  char cell[64];
  std::snprintf(cell, sizeof cell, "%-12s", "");
  os << cell;
  for (const auto& c : m.columns) {
    std::snprintf(cell, sizeof cell, " %11s", c.c_str());
    os << cell;
  }
  os << "       Total\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::snprintf(cell, sizeof cell, "%-12s", m.rows[r].c_str());
    os << cell;
    for (auto n : m.cells[r]) {
      std::snprintf(cell, sizeof cell, " %11zu", n);
      os << cell;
    }
    std::snprintf(cell, sizeof cell, " %11zu\n", m.row_totals[r]);
    os << cell;
  }
  std::snprintf(cell, sizeof cell, "%-12s", "Total");
  os << cell;
  for (auto n : m.column_totals) {
    std::snprintf(cell, sizeof cell, " %11zu", n);
    os << cell;
  }
  std::snprintf(cell, sizeof cell, " %11zu\n", m.grand_total);
  os << cell;
  return os.str();
}

}  // namespace salesig
