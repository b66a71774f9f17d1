#pragma once

#include <vector>

#include "styleeq/seq2seq/model.h"

namespace styleeq {

struct Hypothesis {
  std::vector<int> tokens;  // without BOS; ends with EOS when finished
  double logprob = 0.0;
  double score = 0.0;  // logprob / tokens.size()
  bool finished = false;
};

// Beam search over the decoder. PAD and BOS are never generated. A
// hypothesis finishes at EOS; hypotheses still open after max_len steps are
// returned unfinished. Returns at most `beam` hypotheses sorted by
// length-normalized log-likelihood, best first.
template <typename T>
std::vector<Hypothesis> beam_decode(const Seq2Seq<T>& model, const EncoderInput& input,
                                    const StyleSpec& style, int beam, int max_len);

// Top hypothesis of beam_decode.
template <typename T>
Hypothesis decode_best(const Seq2Seq<T>& model, const EncoderInput& input, const StyleSpec& style,
                       int beam, int max_len);

// Strips s, extracts its own controls, and decodes; returns output tokens.
template <typename T>
std::vector<std::string> reconstruct(const Seq2Seq<T>& model, const Vocabulary& vocab,
                                     const WordListSet& wordlists, const Sentence& s, int beam,
                                     int max_len);

}  // namespace styleeq
