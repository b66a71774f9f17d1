#include "styleeq/tagger.h"

#include <map>
#include <tuple>

#include "styleeq/annotate.h"

namespace styleeq {

OutputTagger::OutputTagger(const std::vector<Sentence>& reference) {
  // Ordered maps give a deterministic lexicographic tie-break.
  std::map<std::string, std::map<std::pair<std::string, std::string>, int>> counts;
  for (const Sentence& s : reference) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      ++counts[to_lower(s.tokens[i])][{s.fine_pos[i], s.lemmas[i]}];
    }
  }
  for (const auto& [surface, options] : counts) {
    const std::pair<std::string, std::string>* best = nullptr;
    int best_count = 0;
    for (const auto& [option, c] : options) {
      if (c > best_count) {
        best = &option;
        best_count = c;
      }
    }
    lexicon_[surface] = Entry{best->first, best->second};
  }
}

Sentence OutputTagger::tag(const std::vector<std::string>& tokens, Style style) const {
  Sentence s = annotate_tokens(tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = lexicon_.find(to_lower(tokens[i]));
    if (it == lexicon_.end()) continue;
    s.fine_pos[i] = it->second.fine;
    s.lemmas[i] = it->second.lemma;
    s.coarse_pos[i] = fine_to_coarse(it->second.fine).value_or("X");
  }
  s.style = style;
  return s;
}

}  // namespace styleeq
