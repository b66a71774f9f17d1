#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "styleeq/corpus.h"

namespace styleeq {

// The order of this enumeration is the serialization order of ControlVector.
enum class Control : int {
  S = 0,
  SBAR,
  ADVP,
  FRAG,
  Conjunction,
  Determiner,
  ThirdNeutralPer,
  ThirdFemalePer,
  ThirdMalePer,
  FirstPer,
  SecondPer,
  ThirdPer,
  HelperVerbs,
  Negation,
  SimplePrep,
  PositionPrep,
  Punctuation,
};

inline constexpr int kNumControls = 17;
inline constexpr int kNumWordListControls = 13;

// Counts above kMaxBucket share one embedding row.
inline constexpr int kMaxBucket = 20;
inline constexpr int kNumBuckets = kMaxBucket + 1;

std::string_view control_name(Control c);
std::optional<Control> parse_control(std::string_view name);

inline Control control_at(int i) { return static_cast<Control>(i); }
inline int control_index(Control c) { return static_cast<int>(c); }

inline bool is_parse_control(Control c) { return control_index(c) < 4; }

const std::array<Control, kNumControls>& all_controls();
const std::array<Control, kNumWordListControls>& word_list_controls();

// True when one control's word list contains the other's (3rdPer and its
// three gendered subsets).
bool controls_nested(Control a, Control b);

struct ControlVector {
  std::array<int, kNumControls> counts{};
  // Set when the sentence carried no parse annotation; S/SBAR/ADVP/FRAG are 0.
  bool parse_absent = false;

  int& operator[](Control c) { return counts[control_index(c)]; }
  int operator[](Control c) const { return counts[control_index(c)]; }

  bool operator==(const ControlVector& o) const { return counts == o.counts; }

  std::vector<int> to_array() const { return {counts.begin(), counts.end()}; }
  static ControlVector from_array(const std::vector<int>& values);
};

class WordListSet {
 public:
  static constexpr int kFormatVersion = 1;

  static WordListSet from_json(const std::string& text);
  static WordListSet load(const std::string& path);

  const std::set<std::string>& list(Control c) const;
  bool contains(Control c, std::string_view lower_token) const;
  bool in_any(std::string_view lower_token) const;

  int version() const { return version_; }
  // SHA-256 of the source file bytes.
  const std::string& hash() const { return hash_; }

 private:
  void validate() const;

  std::array<std::set<std::string>, kNumControls> lists_;
  std::set<std::string> all_;
  int version_ = 0;
  std::string hash_;
};

// Word-list counts over lowercased tokens; a token counts toward every list
// that contains it. Parse controls come from s.parse_counts.
ControlVector extract_controls(const Sentence& s, const WordListSet& w);

// Word-list counts only, parse controls zero and flagged absent.
ControlVector extract_controls(const std::vector<std::string>& tokens, const WordListSet& w);

struct ContentSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<std::string> fine_pos;
  std::vector<std::string> coarse_pos;
  std::size_t original_length = 0;
  // Every token was a control word.
  bool all_stripped = false;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

ContentSequence strip_control_words(const Sentence& s, const WordListSet& w);

int bucket_count(int count);

// nullopt when the perturbed count would be negative.
std::optional<ControlVector> perturb(const ControlVector& z, Control c, int delta);
// Throws std::invalid_argument for an unknown control name.
std::optional<ControlVector> perturb(const ControlVector& z, std::string_view control,
                                     int delta);

}  // namespace styleeq
