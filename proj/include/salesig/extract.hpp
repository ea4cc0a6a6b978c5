#pragma once

#include <map>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "salesig/catalog.hpp"

namespace salesig {

// Field rule: the first element inside a product card with the given tag
// and attr_name="attr_value" (for "class", any one of its tokens) supplies
// the field; value_pattern's single capture group is searched in that
// element's text. The rule named "_record" identifies the card element
// itself and needs no pattern.
struct ExtractionRule {
  std::string field_name;
  std::string tag;
  std::string attr_name;
  std::string attr_value;
  std::string value_pattern;
};

inline constexpr std::string_view kRecordField = "_record";

// Validated rules with compiled patterns. ConfigError on duplicate field
// names, a missing "_record" rule, a bad regex, or a pattern that does not
// have exactly one capture group.
class RuleSet {
 public:
  explicit RuleSet(std::vector<ExtractionRule> rules);

  const ExtractionRule& record_rule() const { return rules_[record_]; }
  const std::vector<ExtractionRule>& rules() const { return rules_; }

  struct Field {
    ExtractionRule rule;
    std::regex pattern;
  };
  const std::vector<Field>& fields() const { return fields_; }

 private:
  std::vector<ExtractionRule> rules_;
  std::size_t record_ = 0;
  std::vector<Field> fields_;
};

std::vector<ExtractionRule> rules_from_json(const nlohmann::json& j);
RuleSet load_rules(const std::string& path);

struct RawRecord {
  std::string source_file;
  std::map<std::string, std::string> fields;  // absent key: extraction miss
};

// One record per card element, in document order.
std::vector<RawRecord> parse_snapshot(std::string_view html, const RuleSet& rules,
                                      const std::string& source_file = {});
std::vector<RawRecord> parse_snapshot(std::string_view html,
                                      const std::vector<ExtractionRule>& rules);

// Every regular file in the directory, by lexicographic filename.
// IoError when the directory is missing.
std::vector<RawRecord> extract_corpus(const std::string& snapshot_dir, const RuleSet& rules);

// Catalog CSV of the records. Columns not extracted stay empty; thousands
// separators are removed from numeric columns; a record without an "id"
// gets "<file stem>-<card number>".
std::string raw_records_csv(const std::vector<RawRecord>& records);

}  // namespace salesig
