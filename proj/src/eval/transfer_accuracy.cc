#include <algorithm>

#include "styleeq/eval.h"

namespace styleeq {
namespace {

bool correct(const NgramStyleClassifier& clf, const OutputTagger& tagger,
             const TransferCandidate& c) {
  const StyleDistribution p = classify_output(clf, tagger, c.tokens);
  const auto best = std::max_element(p.begin(), p.end()) - p.begin();
  return best == style_index(c.target);
}

}  // namespace

TransferAccuracyReport transfer_accuracy(const std::string& model_name,
                                         const std::vector<Sentence>& references,
                                         const CandidateSource& source,
                                         const NgramStyleClassifier& clf,
                                         const OutputTagger& tagger,
                                         std::vector<TransferCandidate>* log) {
  TransferAccuracyReport r;
  r.model = model_name;
  for (const Sentence& ref : references) {
    ++r.references;
    for (Style target : kAllStyles) {
      std::vector<TransferCandidate> cands;
      try {
        cands = source(ref, target);
      } catch (const NoSiblings&) {
        ++r.skipped;
        continue;
      }
      if (cands.empty()) {
        ++r.skipped;
        continue;
      }
      score_candidates(cands, clf, tagger);
      for (Selection method : kAllSelections) {
        AccuracyTable& table = r.by_method[static_cast<int>(method)];
        Cell& cell = table.cells[style_index(ref.style)][style_index(target)];
        for (const auto& c : select(cands, method)) {
          const bool ok = correct(clf, tagger, c);
          cell.correct += ok;
          ++cell.total;
          table.overall.correct += ok;
          ++table.overall.total;
        }
      }
      const double top = *select(cands, Selection::Top).front().classifier_prob;
      const double oracle = *select(cands, Selection::Oracle).front().classifier_prob;
      ++r.dominance_checks;
      if (oracle < top) ++r.dominance_violations;
      if (log) log->insert(log->end(), cands.begin(), cands.end());
    }
  }
  return r;
}

}  // namespace styleeq
