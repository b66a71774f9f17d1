#include <cmath>
#include <stdexcept>

#include "styleeq/eval.h"
#include "styleeq/seq2seq/beam.h"

namespace styleeq {

template <typename T>
PerplexityResult perplexity(const Seq2Seq<T>& model, const std::vector<Example>& examples) {
  if (examples.empty()) throw std::invalid_argument("perplexity: empty split");
  double total = 0.0;
  std::size_t tokens = 0;
  for (const Example& ex : examples) {
    total += model.loss(ex);
    tokens += ex.target.size() + 1;
  }
  PerplexityResult r;
  r.tokens = tokens;
  r.nll = total / static_cast<double>(tokens);
  r.perplexity = std::exp(r.nll);
  return r;
}

template <typename T>
double reconstruction_bleu(const Seq2Seq<T>& model, const Vocabulary& vocab,
                           const std::vector<Example>& examples, int beam, int max_len,
                           std::vector<TokenSeq>* outputs) {
  std::vector<TokenSeq> hyps, refs;
  for (const Example& ex : examples) {
    hyps.push_back(token_strings(vocab, decode_best(model, ex.source, ex.style, beam, max_len).tokens));
    refs.push_back(ex.reference.empty() ? token_strings(vocab, ex.target) : ex.reference);
  }
  if (outputs) *outputs = hyps;
  return bleu(hyps, refs);
}

template PerplexityResult perplexity<float>(const Seq2Seq<float>&, const std::vector<Example>&);
template PerplexityResult perplexity<double>(const Seq2Seq<double>&, const std::vector<Example>&);
template double reconstruction_bleu<float>(const Seq2Seq<float>&, const Vocabulary&,
                                           const std::vector<Example>&, int, int,
                                           std::vector<TokenSeq>*);
template double reconstruction_bleu<double>(const Seq2Seq<double>&, const Vocabulary&,
                                            const std::vector<Example>&, int, int,
                                            std::vector<TokenSeq>*);

}  // namespace styleeq
