#include <stdexcept>

#include "json.hpp"
#include "styleeq/controls.h"
#include "styleeq/hash.h"

namespace styleeq {

WordListSet WordListSet::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("word lists: ") + e.what());
  }
  WordListSet w;
  w.version_ = j.value("version", 0);
  if (w.version_ != kFormatVersion) {
    throw std::runtime_error("word lists: unsupported version " + std::to_string(w.version_));
  }
  if (!j.contains("lists") || !j["lists"].is_object()) {
    throw std::runtime_error("word lists: missing \"lists\" object");
  }
  const auto& lists = j["lists"];
  for (auto it = lists.begin(); it != lists.end(); ++it) {
    auto c = parse_control(it.key());
    if (!c || is_parse_control(*c)) {
      throw std::runtime_error("word lists: unknown list \"" + it.key() + "\"");
    }
  }
  for (Control c : word_list_controls()) {
    const std::string name(control_name(c));
    if (!lists.contains(name)) throw std::runtime_error("word lists: missing list " + name);
    for (const auto& entry : lists[name]) {
      std::string word = entry.get<std::string>();
      if (word.empty()) throw std::runtime_error("word lists: empty entry in " + name);
      w.lists_[control_index(c)].insert(word);
      w.all_.insert(word);
    }
  }
  w.hash_ = sha256_hex(text);
  w.validate();
  return w;
}

WordListSet WordListSet::load(const std::string& path) { return from_json(read_file(path)); }

void WordListSet::validate() const {
  std::set<std::string> union_3rd;
  for (Control c : {Control::ThirdNeutralPer, Control::ThirdFemalePer, Control::ThirdMalePer}) {
    union_3rd.insert(list(c).begin(), list(c).end());
  }
  if (union_3rd != list(Control::ThirdPer)) {
    throw std::runtime_error("word lists: 3rdPer must equal the union of the gendered lists");
  }
  for (const char* end : {".", "!", "?"}) {
    if (all_.count(end)) {
      throw std::runtime_error(std::string("word lists: end punctuation \"") + end +
                               "\" may not appear in any list");
    }
  }
  for (const auto& word : all_) {
    for (char ch : word) {
      if (ch >= 'A' && ch <= 'Z') {
        throw std::runtime_error("word lists: entries must be lowercase: " + word);
      }
    }
  }
}

const std::set<std::string>& WordListSet::list(Control c) const {
  return lists_[control_index(c)];
}

bool WordListSet::contains(Control c, std::string_view lower_token) const {
  const auto& l = lists_[control_index(c)];
  return l.find(std::string(lower_token)) != l.end();
}

bool WordListSet::in_any(std::string_view lower_token) const {
  return all_.find(std::string(lower_token)) != all_.end();
}

}  // namespace styleeq
