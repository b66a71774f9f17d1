#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "styleeq/corpus.h"

namespace styleeq {

// Tags generated token sequences so they can be classified or matched on
// POS counts. Uses the most frequent (fine tag, lemma) seen for each surface
// form in a reference corpus, and the fallback annotator for unseen forms.
class OutputTagger {
 public:
  OutputTagger() = default;
  explicit OutputTagger(const std::vector<Sentence>& reference);

  Sentence tag(const std::vector<std::string>& tokens, Style style = Style::SciFi) const;
  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  struct Entry {
    std::string fine;
    std::string lemma;
  };
  std::unordered_map<std::string, Entry> lexicon_;
};

}  // namespace styleeq
