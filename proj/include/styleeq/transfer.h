#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "styleeq/controls.h"
#include "styleeq/corpus.h"
#include "styleeq/seq2seq/model.h"
#include "styleeq/stylometry.h"
#include "styleeq/tagger.h"
#include "styleeq/vocabulary.h"

namespace styleeq {

// Counts of coarse PROPN, NOUN, VERB and ADJ tags over the whole sentence.
struct PosProfile {
  int length = 0;
  int propn = 0;
  int noun = 0;
  int verb = 0;
  int adj = 0;

  static PosProfile of(const Sentence& s);
  bool operator==(const PosProfile&) const = default;
};

// Relaxation ladder:
//   0  length, proper nouns, nouns, verbs, adjectives all equal
//   1  adjectives dropped
//   2  proper nouns dropped as well
//   3  verbs dropped as well
//   4  nouns dropped as well (length only)
//   4+k  length within +-k
inline constexpr int kLengthOnlyLevel = 4;
bool sibling_matches(const PosProfile& ref, const PosProfile& cand, int level);

struct SiblingQuery {
  const Sentence* reference = nullptr;
  Style target = Style::SciFi;
  int n = 16;
};

struct Sibling {
  const Sentence* sentence = nullptr;
  ControlVector controls;
  int level = 0;  // ladder level at which this sibling was admitted
};

struct SiblingResult {
  std::vector<Sibling> siblings;
  int relaxation_level = 0;  // highest level used
};

class NoSiblings : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Takes every match from each level in turn until n are collected; the
// level that overflows is sampled uniformly without replacement. Returns
// fewer than n when the target-style pool runs out; throws NoSiblings when
// the pool has no target-style sentence. Selection order is pool order.
SiblingResult find_siblings(const SiblingQuery& q, const std::vector<Sentence>& pool,
                            const WordListSet& wordlists, std::uint64_t seed);

// Seed for one reference/target pair, derived from the run seed.
std::uint64_t sibling_seed(std::uint64_t seed, std::string_view reference_id, Style target);

struct TransferCandidate {
  std::string reference_id;
  Style source = Style::SciFi;
  Style target = Style::SciFi;
  std::string sibling_id;  // empty for the baseline
  ControlVector controls;
  std::vector<std::string> tokens;
  double score = 0.0;  // length-normalized log-likelihood
  std::optional<double> classifier_prob;
  int relaxation_level = 0;

  std::string to_json() const;
  static TransferCandidate from_json(const std::string& line);
};

struct DecodeSettings {
  int beam = 8;
  int max_len = 60;
};

// One candidate per sibling (top beam hypothesis each), sorted by score.
std::vector<TransferCandidate> transfer(const Seq2Seq<float>& model, const Vocabulary& vocab,
                                        const WordListSet& wordlists, const Sentence& ref,
                                        Style target, const std::vector<Sentence>& pool, int n,
                                        const DecodeSettings& decode, std::uint64_t seed);

// All hypotheses of one beam search with the target genre embedding.
std::vector<TransferCandidate> baseline_transfer(const Seq2Seq<float>& model,
                                                 const Vocabulary& vocab,
                                                 const WordListSet& wordlists,
                                                 const Sentence& ref, Style target,
                                                 const DecodeSettings& decode);

enum class Selection { All, Top, Oracle };
std::string_view selection_name(Selection s);
std::optional<Selection> parse_selection(std::string_view name);
inline constexpr std::array<Selection, 3> kAllSelections = {Selection::All, Selection::Top,
                                                            Selection::Oracle};

// Fills classifier_prob with the classifier's probability of c.target after
// tagging the output tokens.
void score_candidates(std::vector<TransferCandidate>& cands, const NgramStyleClassifier& clf,
                      const OutputTagger& tagger);
StyleDistribution classify_output(const NgramStyleClassifier& clf, const OutputTagger& tagger,
                                  const std::vector<std::string>& tokens);

// All: every candidate. Top: best model score. Oracle: highest
// classifier_prob (score_candidates must have run). Ties keep the earlier
// candidate.
std::vector<TransferCandidate> select(const std::vector<TransferCandidate>& cands,
                                      Selection method);

// Shuffled, model-blind CSV for human annotation plus a key mapping item
// ids back to (reference, model, target).
struct AnnotationItem {
  std::string model;
  TransferCandidate candidate;
};
void export_annotation(std::vector<AnnotationItem> items, std::uint64_t seed,
                       const std::string& csv_path, const std::string& key_path);

}  // namespace styleeq
