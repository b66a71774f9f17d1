#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "styleeq/controls.h"
#include "styleeq/corpus.h"
#include "styleeq/seq2seq/model.h"
#include "styleeq/stylometry.h"
#include "styleeq/tagger.h"
#include "styleeq/transfer.h"

namespace styleeq {

using TokenSeq = std::vector<std::string>;

// ------------------------------------------------------------------ BLEU

struct BleuStats {
  std::array<long, 4> matches{};
  std::array<long, 4> totals{};
  long hyp_length = 0;
  long ref_length = 0;

  void add(const TokenSeq& hyp, const TokenSeq& ref);
  double score() const;
};

// Corpus-level BLEU-4 with brevity penalty. Unigram precision is unsmoothed;
// the 2- to 4-gram precisions use add-one smoothing (m + 1) / (l + 1).
double bleu(const std::vector<TokenSeq>& hypotheses, const std::vector<TokenSeq>& references);

// ------------------------------------------------------------ perplexity

struct PerplexityResult {
  double nll = 0.0;  // mean per-token negative log-likelihood, nats
  double perplexity = 0.0;
  std::size_t tokens = 0;
};

// Teacher-forced; every target token and the closing EOS count once.
template <typename T>
PerplexityResult perplexity(const Seq2Seq<T>& model, const std::vector<Example>& examples);

// Reconstruction BLEU of decode_best over the examples.
template <typename T>
double reconstruction_bleu(const Seq2Seq<T>& model, const Vocabulary& vocab,
                           const std::vector<Example>& examples, int beam, int max_len,
                           std::vector<TokenSeq>* outputs = nullptr);

// -------------------------------------------------------- control fidelity

// Produces output tokens for a reference decoded under controls z.
using Generator = std::function<TokenSeq(const Sentence& ref, const ControlVector& z)>;

Generator model_generator(const Seq2Seq<float>& model, const Vocabulary& vocab,
                          const WordListSet& wordlists, int beam, int max_len);

struct FidelityTrial {
  std::string sentence_id;
  Control control = Control::Conjunction;
  int delta = 0;
  int original = 0;  // reference count
  int target = 0;    // perturbed count
  int realized = 0;  // count in the perturbed decode
  int baseline = 0;  // count in the delta = 0 decode
  bool exact = false;
  bool direction = false;
  bool atomic = false;

  std::string to_json() const;
  static FidelityTrial from_json(const std::string& line);
};

struct FidelityRow {
  Control control = Control::Conjunction;
  bool scored = false;  // false for parse controls
  int trials = 0;
  int exact = 0;
  int direction = 0;
  int atomic = 0;

  double exact_pct() const { return trials ? 100.0 * exact / trials : 0.0; }
  double direction_pct() const { return trials ? 100.0 * direction / trials : 0.0; }
  double atomic_pct() const { return trials ? 100.0 * atomic / trials : 0.0; }
};

struct FidelityReport {
  std::array<FidelityRow, kNumControls> rows{};
  int sentences = 0;
  std::vector<int> deltas;
  std::vector<FidelityTrial> trials;

  const FidelityRow& row(Control c) const { return rows[control_index(c)]; }
};

// For each sample, decodes once with its own controls (the Atomic
// baseline), then once per word-list control and non-zero delta whose
// target count is non-negative. Scoring of a trial with realized controls r,
// baseline decode b and reference controls z:
//   Exact      r[c] == z[c] + delta
//   Direction  sign(r[c] - z[c]) == sign(delta)
//   Atomic     r[c] != b[c], and r[k] == b[k] for every other word-list
//              control k not nested with c
// Parse controls are reported unscored.
FidelityReport control_fidelity(const std::vector<Sentence>& samples,
                                const WordListSet& wordlists, const Generator& generate,
                                const std::vector<int>& deltas);

// Rebuilds the per-control rows from a trial log.
FidelityReport aggregate_trials(const std::vector<FidelityTrial>& trials, int sentences,
                                const std::vector<int>& deltas);

// --------------------------------------------------------- transfer accuracy

struct Cell {
  long correct = 0;
  long total = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct AccuracyTable {
  std::array<std::array<Cell, kNumStyles>, kNumStyles> cells{};  // [source][target]
  Cell overall;
};

struct TransferAccuracyReport {
  std::string model;
  std::array<AccuracyTable, 3> by_method{};  // indexed by Selection
  int references = 0;
  int skipped = 0;
  // Reference/target pairs whose oracle pick has a lower target probability
  // than the top pick.
  int dominance_violations = 0;
  int dominance_checks = 0;

  const AccuracyTable& table(Selection s) const { return by_method[static_cast<int>(s)]; }
};

// Produces candidates for one reference and target; may throw NoSiblings.
using CandidateSource =
    std::function<std::vector<TransferCandidate>(const Sentence& ref, Style target)>;

// Candidates are scored with the classifier; a selection counts as correct
// when the classifier's argmax is the target style. With method=all every
// candidate is scored individually.
TransferAccuracyReport transfer_accuracy(const std::string& model_name,
                                         const std::vector<Sentence>& references,
                                         const CandidateSource& source,
                                         const NgramStyleClassifier& clf,
                                         const OutputTagger& tagger,
                                         std::vector<TransferCandidate>* log = nullptr);

// ------------------------------------------------------------------ reports

struct ReconstructionRow {
  std::string model;
  double bleu = 0.0;
  double nll = 0.0;
  double perplexity = 0.0;
};

std::string reconstruction_tsv(const std::vector<ReconstructionRow>& rows);
std::string fidelity_tsv(const FidelityReport& report);
std::string transfer_accuracy_tsv(const std::vector<TransferAccuracyReport>& reports);
std::string classifier_tsv(const std::vector<std::pair<AblationMode, ClassifierAccuracy>>& rows);

// Fixed-point formatting used by every report, independent of locale.
std::string format_fixed(double value, int decimals);

}  // namespace styleeq
