#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "styleeq/annotate.h"
#include "styleeq/controls.h"
#include "styleeq/corpus.h"

namespace testing {

inline std::string data_path(const std::string& rel) {
  return std::string(STYLEEQ_DATA_DIR) + "/" + rel;
}

inline const styleeq::WordListSet& wordlists() {
  static const styleeq::WordListSet w = styleeq::WordListSet::load(data_path("wordlists.json"));
  return w;
}

// Sentence with fallback tags for each token.
inline styleeq::Sentence tagged(const std::vector<std::string>& tokens,
                                styleeq::Style style = styleeq::Style::SciFi,
                                const std::string& id = "s") {
  styleeq::Sentence s = styleeq::annotate_tokens(tokens);
  s.style = style;
  s.id = id;
  return s;
}

// Sentence with explicit coarse tags; fine tags are a representative
// member of each coarse class.
inline styleeq::Sentence with_coarse(const std::vector<std::string>& tokens,
                                     const std::vector<std::string>& coarse,
                                     styleeq::Style style = styleeq::Style::SciFi,
                                     const std::string& id = "s") {
  static const std::vector<std::pair<std::string, std::string>> fine_of = {
      {"NOUN", "NN"}, {"PROPN", "NNP"}, {"VERB", "VBD"}, {"ADJ", "JJ"}, {"ADV", "RB"},
      {"DET", "DT"},  {"PUNCT", "."},   {"PRON", "PRP"}, {"ADP", "IN"}, {"CCONJ", "CC"},
      {"AUX", "MD"},  {"NUM", "CD"},    {"PART", "TO"},  {"X", "FW"},   {"INTJ", "UH"}};
  styleeq::Sentence s;
  s.tokens = tokens;
  s.coarse_pos = coarse;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    s.lemmas.push_back(styleeq::to_lower(tokens[i]));
    std::string fine = "NN";
    for (const auto& [c, f] : fine_of) {
      if (c == coarse[i]) fine = f;
    }
    s.fine_pos.push_back(fine);
  }
  s.style = style;
  s.id = id;
  return s;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("styleeq-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace testing
