#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "styleeq/corpus.h"

namespace styleeq {

// Dense string <-> id map with four reserved ids.
class IndexMap {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr int kNumReserved = 4;

  IndexMap();

  int add(const std::string& s);
  // kUnk for anything not in the map.
  int id(std::string_view s) const;
  const std::string& str(int id) const;
  bool contains(std::string_view s) const;
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<std::string>& entries() const { return entries_; }

  bool operator==(const IndexMap& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, int> index_;
};

struct Vocabulary {
  static constexpr int kFormatVersion = 1;

  IndexMap token;
  IndexMap lemma;
  IndexMap fine_pos;
  IndexMap coarse_pos;

  std::string to_json() const;
  static Vocabulary from_json(const std::string& text);
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  // SHA-256 of to_json(); models record it to detect vocabulary drift.
  std::string hash() const;

  bool operator==(const Vocabulary&) const = default;
};

// Token and lemma maps keep train-split entries with frequency >= min_count,
// at most max_size of them (0 = unlimited), most frequent first with ties
// broken lexicographically. POS maps keep every train-split tag.
Vocabulary build_vocab(const Corpus& corpus, int min_count, int max_size = 0);

}  // namespace styleeq
