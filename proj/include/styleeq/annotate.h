#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "styleeq/corpus.h"

namespace styleeq {

// Penn Treebank fine tag to Universal Dependencies coarse tag. Returns
// nullopt for tags outside the inventory.
std::optional<std::string> fine_to_coarse(std::string_view fine);

// Splits on whitespace, separates punctuation, and splits English clitics
// the Treebank way ("don't" -> "do" "n't", "John's" -> "John" "'s").
std::vector<std::string> tokenize(std::string_view raw);

// Best-effort annotation from bundled lexicons. The returned sentence has
// no style, no id and no parse counts. Precondition: raw is non-empty.
Sentence annotate_fallback(std::string_view raw);

// Same rules applied to an existing tokenization.
Sentence annotate_tokens(const std::vector<std::string>& tokens);

// Lexicon lookups exposed for the corpus tagger.
std::string fallback_lemma(std::string_view token, std::string_view fine);
std::string fallback_fine_tag(std::string_view token, bool sentence_initial);

std::string to_lower(std::string_view s);

}  // namespace styleeq
