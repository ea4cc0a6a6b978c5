#include "salesig/extract.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
#include <set>

#include "salesig/errors.hpp"
#include "salesig/text.hpp"

namespace salesig {

RuleSet::RuleSet(std::vector<ExtractionRule> rules) : rules_(std::move(rules)) {
  std::set<std::string> names;
  bool have_record = false;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.field_name.empty()) throw ConfigError("extraction rule with empty field_name");
    if (!names.insert(r.field_name).second) {
      throw ConfigError("duplicate extraction field '" + r.field_name + "'");
    }
    if (r.tag.empty()) throw ConfigError("rule '" + r.field_name + "' has no tag");
    if (r.field_name == kRecordField) {
      record_ = i;
      have_record = true;
    }
  }
  if (!have_record) throw ConfigError("rule set lacks the \"_record\" card rule");

  for (const auto& r : rules_) {
    if (r.field_name == kRecordField) continue;
    std::regex re;
    try {
      re = std::regex(r.value_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ConfigError("rule '" + r.field_name + "' has an invalid pattern: " + e.what());
    }
    if (re.mark_count() != 1) {
      throw ConfigError("rule '" + r.field_name + "' pattern must have exactly one capture group");
    }
    fields_.push_back({r, std::move(re)});
  }
}

std::vector<ExtractionRule> rules_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("rule file must be a JSON array");
  std::vector<ExtractionRule> out;
  try {
    for (const auto& e : j) {
      ExtractionRule r;
      r.field_name = e.at("field_name").get<std::string>();
      r.tag = e.at("tag").get<std::string>();
      r.attr_name = e.value("attr_name", "");
      r.attr_value = e.value("attr_value", "");
      r.value_pattern = e.value("value_pattern", "");
      std::transform(r.tag.begin(), r.tag.end(), r.tag.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      std::transform(r.attr_name.begin(), r.attr_name.end(), r.attr_name.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed extraction rule: ") + e.what());
  }
  return out;
}

RuleSet load_rules(const std::string& path) {
  try {
    return RuleSet(rules_from_json(nlohmann::json::parse(read_file(path))));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("rule file '" + path + "': " + e.what());
  }
}

namespace {

bool is_void_element(std::string_view tag) {
  static const std::set<std::string_view> kVoid{"area", "base", "br",    "col",  "embed",
                                                "hr",   "img",  "input", "link", "meta",
                                                "param", "source", "track", "wbr"};
  return kVoid.count(tag) > 0;
}

bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea";
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_';
}

bool blank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

struct Element {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::size_t text_begin = 0;  // index into text chunks
  std::size_t text_end = 0;
  bool card = false;
  bool open = true;
  std::size_t card_index = 0;  // enclosing card + 1; 0 when outside any card

  const std::string* attr(const std::string& name) const {
    for (const auto& [k, v] : attrs) {
      if (k == name) return &v;
    }
    return nullptr;
  }
};

struct OpenTag {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  bool self_closing = false;
};

// Parses "<name attr=... >" starting at html[pos] == '<'. Sets pos past '>'.
std::optional<OpenTag> scan_open_tag(std::string_view html, std::size_t& pos) {
  std::size_t p = pos + 1;
  if (p >= html.size() || !std::isalpha(static_cast<unsigned char>(html[p]))) return std::nullopt;
  OpenTag t;
  const std::size_t name_start = p;
  while (p < html.size() && name_char(html[p])) ++p;
  t.name = lower(html.substr(name_start, p - name_start));
  for (;;) {
    while (p < html.size() && blank(html[p])) ++p;
    if (p >= html.size()) break;
    if (html[p] == '>') {
      ++p;
      break;
    }
    if (html[p] == '/') {
      ++p;
      if (p < html.size() && html[p] == '>') {
        t.self_closing = true;
        ++p;
        break;
      }
      continue;
    }
    const std::size_t an = p;
    while (p < html.size() && !blank(html[p]) && html[p] != '=' && html[p] != '>' && html[p] != '/') ++p;
    std::string name = lower(html.substr(an, p - an));
    while (p < html.size() && blank(html[p])) ++p;
    std::string value;
    if (p < html.size() && html[p] == '=') {
      ++p;
      while (p < html.size() && blank(html[p])) ++p;
      if (p < html.size() && (html[p] == '"' || html[p] == '\'')) {
        const char q = html[p++];
        const std::size_t vs = p;
        while (p < html.size() && html[p] != q) ++p;
        value = std::string(html.substr(vs, p - vs));
        if (p < html.size()) ++p;
      } else {
        const std::size_t vs = p;
        while (p < html.size() && !blank(html[p]) && html[p] != '>') ++p;
        value = std::string(html.substr(vs, p - vs));
      }
    }
    if (!name.empty()) t.attrs.emplace_back(std::move(name), std::move(value));
  }
  pos = p;
  return t;
}

bool matches(const Element& e, const ExtractionRule& r) {
  if (e.tag != r.tag) return false;
  if (r.attr_name.empty()) return true;
  const std::string* v = e.attr(r.attr_name);
  if (!v) return false;
  if (r.attr_name != "class") return *v == r.attr_value;
  // class lists match on any single token
  std::size_t p = 0;
  while (p < v->size()) {
    while (p < v->size() && blank((*v)[p])) ++p;
    std::size_t q = p;
    while (q < v->size() && !blank((*v)[q])) ++q;
    if (q > p && v->compare(p, q - p, r.attr_value) == 0) return true;
    p = q;
  }
  return false;
}

// Tag-soup scan: builds the element list in document order plus the text
// chunks between tags. Unclosed elements end at their parent's close, at
// the next card, or at end of input.
class Scanner {
 public:
  Scanner(std::string_view html, const ExtractionRule& card_rule) : html_(html), card_rule_(card_rule) {}

  void run() {
    std::size_t pos = 0;
    while (pos < html_.size()) {
      const std::size_t lt = html_.find('<', pos);
      if (lt == std::string_view::npos) {
        add_text(html_.substr(pos));
        break;
      }
      if (lt > pos) add_text(html_.substr(pos, lt - pos));
      pos = lt;
      if (html_.compare(pos, 4, "<!--") == 0) {
        const std::size_t end = html_.find("-->", pos + 4);
        pos = end == std::string_view::npos ? html_.size() : end + 3;
      } else if (html_.compare(pos, 2, "<!") == 0 || html_.compare(pos, 2, "<?") == 0) {
        const std::size_t end = html_.find('>', pos);
        pos = end == std::string_view::npos ? html_.size() : end + 1;
      } else if (html_.compare(pos, 2, "</") == 0) {
        const std::size_t end = html_.find('>', pos);
        const std::size_t stop = end == std::string_view::npos ? html_.size() : end;
        std::size_t n = pos + 2;
        while (n < stop && name_char(html_[n])) ++n;
        close(lower(html_.substr(pos + 2, n - pos - 2)));
        pos = end == std::string_view::npos ? html_.size() : end + 1;
      } else if (auto tag = scan_open_tag(html_, pos)) {
        open(std::move(*tag), pos);
      } else {
        add_text(html_.substr(pos, 1));
        ++pos;
      }
    }
    while (!stack_.empty()) pop();
  }

  std::vector<Element> elements;
  std::vector<std::string_view> text;

 private:
  void add_text(std::string_view t) { text.push_back(t); }

  void pop() {
    auto& e = elements[stack_.back()];
    e.text_end = text.size();
    e.open = false;
    if (e.card) current_card_ = 0;
    stack_.pop_back();
  }

  void close(const std::string& name) {
    for (std::size_t k = stack_.size(); k-- > 0;) {
      if (elements[stack_[k]].tag == name) {
        while (stack_.size() > k) pop();
        return;
      }
    }
  }

  void open(OpenTag tag, std::size_t& pos) {
    Element e;
    e.tag = std::move(tag.name);
    e.attrs = std::move(tag.attrs);
    e.text_begin = text.size();
    e.card = matches(e, card_rule_);
    if (e.card && current_card_) {
      // A new card closes the previous one and everything still open in it.
      while (!stack_.empty()) {
        const bool was_card = elements[stack_.back()].card;
        pop();
        if (was_card) break;
      }
    }
    const std::size_t idx = elements.size();
    if (e.card) current_card_ = idx + 1;
    e.card_index = current_card_;
    const bool raw = is_raw_text_element(e.tag);
    const bool leaf = tag.self_closing || is_void_element(e.tag);
    elements.push_back(std::move(e));
    if (raw && !leaf) {
      const std::string end_tag = "</" + elements.back().tag;
      std::size_t p = pos;
      std::size_t found = std::string_view::npos;
      while ((p = html_.find("</", p)) != std::string_view::npos) {
        if (lower(html_.substr(p, end_tag.size())) == end_tag) {
          found = p;
          break;
        }
        p += 2;
      }
      const std::size_t stop = found == std::string_view::npos ? html_.size() : found;
      add_text(html_.substr(pos, stop - pos));
      elements.back().text_end = text.size();
      elements.back().open = false;
      const std::size_t gt = found == std::string_view::npos ? found : html_.find('>', found);
      pos = gt == std::string_view::npos ? html_.size() : gt + 1;
      return;
    }
    if (leaf) {
      elements.back().text_end = text.size();
      elements.back().open = false;
      return;
    }
    stack_.push_back(idx);
  }

  std::string_view html_;
  const ExtractionRule& card_rule_;
  std::vector<std::size_t> stack_;
  std::size_t current_card_ = 0;
};

}  // namespace

std::vector<RawRecord> parse_snapshot(std::string_view html, const RuleSet& rules,
                                      const std::string& source_file) {
  Scanner scan(html, rules.record_rule());
  scan.run();

  std::vector<RawRecord> out;
  const auto& els = scan.elements;
  for (std::size_t c = 0; c < els.size(); ++c) {
    if (!els[c].card) continue;
    RawRecord rec;
    rec.source_file = source_file;
    for (const auto& field : rules.fields()) {
      for (std::size_t d = c + 1; d < els.size() && els[d].card_index == c + 1; ++d) {
        if (!matches(els[d], field.rule)) continue;
        std::string content;
        for (std::size_t t = els[d].text_begin; t < els[d].text_end; ++t) content += scan.text[t];
        std::smatch m;
        if (std::regex_search(content, m, field.pattern) && m[1].matched) {
          const auto value = trim(std::string_view(content).substr(
              static_cast<std::size_t>(m.position(1)), static_cast<std::size_t>(m.length(1))));
          if (!value.empty()) rec.fields[field.rule.field_name] = std::string(value);
        }
        break;  // first qualifying element decides, match or miss
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<RawRecord> parse_snapshot(std::string_view html,
                                      const std::vector<ExtractionRule>& rules) {
  return parse_snapshot(html, RuleSet(rules));
}

std::vector<RawRecord> extract_corpus(const std::string& snapshot_dir, const RuleSet& rules) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(snapshot_dir, ec)) {
    throw IoError("snapshot directory '" + snapshot_dir + "' does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(snapshot_dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  std::vector<RawRecord> out;
  for (const auto& f : files) {
    auto recs = parse_snapshot(read_file(f.string()), rules, f.filename().string());
    std::move(recs.begin(), recs.end(), std::back_inserter(out));
  }
  return out;
}

std::string raw_records_csv(const std::vector<RawRecord>& records) {
  std::string out = csv::encode_row(csv::Row(kCatalogColumns.begin(), kCatalogColumns.end()));
  std::string last_file;
  std::size_t card = 0;
  for (const auto& r : records) {
    card = r.source_file == last_file ? card + 1 : 1;
    last_file = r.source_file;
    csv::Row row;
    for (std::size_t c = 0; c < kCatalogColumns.size(); ++c) {
      const std::string col(kCatalogColumns[c]);
      auto it = r.fields.find(col);
      std::string v = it == r.fields.end() ? std::string() : it->second;
      if (c >= 2) v.erase(std::remove(v.begin(), v.end(), ','), v.end());
      if (c == 0 && v.empty()) {
        v = std::filesystem::path(r.source_file).stem().string() + "-" + std::to_string(card);
      }
      row.push_back(std::move(v));
    }
    out += csv::encode_row(row);
  }
  return out;
}

}  // namespace salesig
