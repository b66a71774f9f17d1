#include "styleeq/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "styleeq/hash.h"

namespace styleeq {
using json = nlohmann::ordered_json;

namespace {

const char* const kReserved[IndexMap::kNumReserved] = {"<pad>", "<unk>", "<s>", "</s>"};

void add_by_frequency(IndexMap& map, const std::map<std::string, int>& counts,
                      int min_count, int max_size) {
  std::vector<std::pair<std::string, int>> items;
  for (const auto& [s, c] : counts) {
    if (c >= min_count) items.emplace_back(s, c);
  }
  // std::map iteration is lexicographic, so a stable sort on count keeps
  // the lexicographically smaller entry first among equal counts.
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (max_size > 0 && items.size() > static_cast<std::size_t>(max_size)) {
    items.resize(max_size);
  }
  for (const auto& [s, c] : items) map.add(s);
}

IndexMap map_from_json(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw std::runtime_error(std::string("vocabulary: missing list \"") + key + "\"");
  }
  const auto& list = j[key];
  if (list.size() < IndexMap::kNumReserved) {
    throw std::runtime_error(std::string("vocabulary: list \"") + key + "\" lacks reserved ids");
  }
  IndexMap map;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string s = list[i].get<std::string>();
    if (i < IndexMap::kNumReserved) {
      if (s != kReserved[i]) throw std::runtime_error("vocabulary: reserved id mismatch");
      continue;
    }
    if (map.add(s) != static_cast<int>(i)) {
      throw std::runtime_error("vocabulary: duplicate entry \"" + s + "\"");
    }
  }
  return map;
}

}  // namespace

IndexMap::IndexMap() {
  for (const char* r : kReserved) add(r);
}

int IndexMap::add(const std::string& s) {
  auto [it, inserted] = index_.emplace(s, size());
  if (inserted) entries_.push_back(s);
  return it->second;
}

int IndexMap::id(std::string_view s) const {
  auto it = index_.find(std::string(s));
  return it == index_.end() ? kUnk : it->second;
}

bool IndexMap::contains(std::string_view s) const {
  return index_.count(std::string(s)) != 0;
}

const std::string& IndexMap::str(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("IndexMap: id out of range");
  return entries_[id];
}

std::string Vocabulary::to_json() const {
  json j;
  j["version"] = kFormatVersion;
  j["token"] = token.entries();
  j["lemma"] = lemma.entries();
  j["fine_pos"] = fine_pos.entries();
  j["coarse_pos"] = coarse_pos.entries();
  return j.dump(1) + "\n";
}

Vocabulary Vocabulary::from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("version", 0) != kFormatVersion) {
    throw std::runtime_error("vocabulary: unsupported version");
  }
  Vocabulary v;
  v.token = map_from_json(j, "token");
  v.lemma = map_from_json(j, "lemma");
  v.fine_pos = map_from_json(j, "fine_pos");
  v.coarse_pos = map_from_json(j, "coarse_pos");
  return v;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json();
}

Vocabulary Vocabulary::load(const std::string& path) { return from_json(read_file(path)); }

std::string Vocabulary::hash() const { return sha256_hex(to_json()); }

Vocabulary build_vocab(const Corpus& corpus, int min_count, int max_size) {
  if (corpus.train.empty()) throw std::runtime_error("build_vocab: empty train split");
  if (min_count < 1) throw std::invalid_argument("build_vocab: min_count must be >= 1");
  std::map<std::string, int> tokens, lemmas, fine, coarse;
  for (const Sentence& s : corpus.train) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      ++tokens[s.tokens[i]];
      ++lemmas[s.lemmas[i]];
      ++fine[s.fine_pos[i]];
      ++coarse[s.coarse_pos[i]];
    }
  }
  Vocabulary v;
  add_by_frequency(v.token, tokens, min_count, max_size);
  add_by_frequency(v.lemma, lemmas, min_count, max_size);
  add_by_frequency(v.fine_pos, fine, 1, 0);
  add_by_frequency(v.coarse_pos, coarse, 1, 0);
  return v;
}

}  // namespace styleeq
