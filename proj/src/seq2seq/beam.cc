#include "styleeq/seq2seq/beam.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace styleeq {
namespace {

struct Expansion {
  double logprob;
  int parent;
  int token;
};

bool better(const Expansion& a, const Expansion& b) {
  if (a.logprob != b.logprob) return a.logprob > b.logprob;
  if (a.parent != b.parent) return a.parent < b.parent;
  return a.token < b.token;
}

bool ranks_before(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tokens < b.tokens;
}

Hypothesis finish(std::vector<int> tokens, double logprob, bool finished) {
  Hypothesis h;
  h.tokens = std::move(tokens);
  h.logprob = logprob;
  h.score = logprob / static_cast<double>(std::max<std::size_t>(1, h.tokens.size()));
  h.finished = finished;
  return h;
}

}  // namespace

template <typename T>
std::vector<Hypothesis> beam_decode(const Seq2Seq<T>& model, const EncoderInput& input,
                                    const StyleSpec& style, int beam, int max_len) {
  if (beam < 1) throw std::invalid_argument("beam must be >= 1");
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  const EncoderState<T> enc = model.encode(input, style);
  std::vector<nn::Matrix<T>> h = model.initial_decoder_state(enc, 1);

  std::vector<std::vector<int>> live_tokens{{}};
  std::vector<double> live_lp{0.0};
  std::vector<Hypothesis> finished;
  std::vector<Expansion> pool;

  for (int step = 0; step < max_len && !live_tokens.empty(); ++step) {
    std::vector<int> last;
    for (const auto& t : live_tokens) last.push_back(t.empty() ? IndexMap::kBos : t.back());
    const nn::Matrix<T> logp = model.decode_step(enc, last, h);

    pool.clear();
    const int vocab = static_cast<int>(logp.rows());
    for (int b = 0; b < static_cast<int>(live_tokens.size()); ++b) {
      for (int v = 0; v < vocab; ++v) {
        if (v == IndexMap::kPad || v == IndexMap::kBos) continue;
        pool.push_back({live_lp[b] + static_cast<double>(logp(v, b)), b, v});
      }
    }
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(beam), pool.size());
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(),
                      better);

    std::vector<std::vector<int>> next_tokens;
    std::vector<double> next_lp;
    std::vector<int> parents;
    for (std::size_t i = 0; i < keep; ++i) {
      const Expansion& e = pool[i];
      std::vector<int> tokens = live_tokens[e.parent];
      tokens.push_back(e.token);
      if (e.token == IndexMap::kEos) {
        finished.push_back(finish(std::move(tokens), e.logprob, true));
      } else {
        next_tokens.push_back(std::move(tokens));
        next_lp.push_back(e.logprob);
        parents.push_back(e.parent);
      }
    }
    if (static_cast<int>(finished.size()) >= beam) {
      live_tokens.clear();
      break;
    }
    for (auto& layer : h) {
      nn::Matrix<T> gathered(layer.rows(), static_cast<Eigen::Index>(parents.size()));
      for (std::size_t i = 0; i < parents.size(); ++i) {
        gathered.col(static_cast<Eigen::Index>(i)) = layer.col(parents[i]);
      }
      layer = std::move(gathered);
    }
    live_tokens = std::move(next_tokens);
    live_lp = std::move(next_lp);
  }
  for (std::size_t i = 0; i < live_tokens.size(); ++i) {
    finished.push_back(finish(live_tokens[i], live_lp[i], false));
  }
  std::sort(finished.begin(), finished.end(), ranks_before);
  if (static_cast<int>(finished.size()) > beam) finished.resize(beam);
  return finished;
}

template <typename T>
Hypothesis decode_best(const Seq2Seq<T>& model, const EncoderInput& input, const StyleSpec& style,
                       int beam, int max_len) {
  return beam_decode(model, input, style, beam, max_len).front();
}

template <typename T>
std::vector<std::string> reconstruct(const Seq2Seq<T>& model, const Vocabulary& vocab,
                                     const WordListSet& wordlists, const Sentence& s, int beam,
                                     int max_len) {
  const Example ex = make_example(vocab, wordlists, s);
  return token_strings(vocab, decode_best(model, ex.source, ex.style, beam, max_len).tokens);
}

#define STYLEEQ_INSTANTIATE(T)                                                               \
  template std::vector<Hypothesis> beam_decode<T>(const Seq2Seq<T>&, const EncoderInput&,      \
                                                  const StyleSpec&, int, int);                 \
  template Hypothesis decode_best<T>(const Seq2Seq<T>&, const EncoderInput&, const StyleSpec&, \
                                     int, int);                                                \
  template std::vector<std::string> reconstruct<T>(const Seq2Seq<T>&, const Vocabulary&,       \
                                                   const WordListSet&, const Sentence&, int,   \
                                                   int);
STYLEEQ_INSTANTIATE(float)
STYLEEQ_INSTANTIATE(double)
#undef STYLEEQ_INSTANTIATE

}  // namespace styleeq
