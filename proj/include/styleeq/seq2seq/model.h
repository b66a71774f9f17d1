#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "styleeq/controls.h"
#include "styleeq/corpus.h"
#include "styleeq/nn/layers.h"
#include "styleeq/nn/parameter_store.h"
#include "styleeq/vocabulary.h"

namespace styleeq {

// StyleEQ conditions the decoder on 17 control embeddings; Genre is the
// baseline that uses one embedding per style of the same total width.
enum class ModelKind { StyleEQ, Genre };

std::string_view model_kind_name(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelConfig {
  ModelKind kind = ModelKind::StyleEQ;
  int word_emb = 128;
  int lemma_emb = 128;
  int fine_emb = 64;
  int coarse_emb = 32;
  int hidden = 512;  // encoder GRU, decoder GRU and attention width
  int layers = 2;
  int dec_emb = 512;
  int ctrl_emb = 50;
  int perceptron = 512;

  int encoder_input() const { return word_emb + lemma_emb + fine_emb + coarse_emb; }
  // Width of the style slice of the decoder input; the genre embedding has
  // the same width as the 17 control embeddings together.
  int style_width() const { return kNumControls * ctrl_emb; }
  int rho_width() const { return dec_emb + style_width(); }

  void validate() const;
  std::string to_json() const;
  static ModelConfig from_json(const std::string& text);

  bool operator==(const ModelConfig&) const = default;
};

struct VocabSizes {
  int token = 0;
  int lemma = 0;
  int fine = 0;
  int coarse = 0;

  static VocabSizes of(const Vocabulary& v);
  bool operator==(const VocabSizes&) const = default;
};

struct EncoderInput {
  std::vector<int> word;
  std::vector<int> lemma;
  std::vector<int> fine;
  std::vector<int> coarse;

  std::size_t size() const { return word.size(); }
};

struct StyleSpec {
  ControlVector controls;
  Style genre = Style::SciFi;
};

// One reconstruction example: content in, full reference out.
struct Example {
  std::string id;
  EncoderInput source;
  StyleSpec style;
  std::vector<int> target;  // reference token ids without BOS/EOS
  std::vector<std::string> reference;
};

// Empty content becomes a single BOS placeholder position.
EncoderInput encode_content(const Vocabulary& vocab, const ContentSequence& content);
Example make_example(const Vocabulary& vocab, const WordListSet& wordlists, const Sentence& s);
std::vector<Example> make_examples(const Vocabulary& vocab, const WordListSet& wordlists,
                                   const std::vector<Sentence>& sentences);

std::vector<int> token_ids(const Vocabulary& vocab, const std::vector<std::string>& tokens);
// Drops a trailing EOS.
std::vector<std::string> token_strings(const Vocabulary& vocab, const std::vector<int>& ids);

template <typename T>
struct EncoderState {
  nn::Matrix<T> contexts;      // hidden x M, top encoder layer
  nn::Matrix<T> context_proj;  // attention projection of the contexts
  std::vector<nn::Vector<T>> final_states;
  nn::Vector<T> style;       // style slice of the decoder input
  nn::Vector<T> style_proj;  // first decoder layer's input projection of it, plus bias
};

template <typename T>
class Seq2Seq {
 public:
  Seq2Seq(const ModelConfig& config, const VocabSizes& sizes);

  const ModelConfig& config() const { return config_; }
  const VocabSizes& vocab_sizes() const { return sizes_; }
  nn::ParameterStore<T>& params() { return params_; }
  const nn::ParameterStore<T>& params() const { return params_; }

  void initialize(std::uint64_t seed) { params_.initialize(seed); }

  // Concatenated control embeddings (StyleEQ) or genre embedding (Genre).
  nn::Vector<T> style_vector(const StyleSpec& style) const;

  EncoderState<T> encode(const EncoderInput& input, const StyleSpec& style) const;

  // Initial decoder states for a batch of `batch` hypotheses: each decoder
  // layer starts from the matching encoder layer's final state.
  std::vector<nn::Matrix<T>> initial_decoder_state(const EncoderState<T>& enc, int batch) const;

  // One decoder step for B hypotheses. `h` holds per-layer states
  // (hidden x B) and is advanced in place. Returns log-probs, |V| x B.
  nn::Matrix<T> decode_step(const EncoderState<T>& enc, const std::vector<int>& y_prev,
                            std::vector<nn::Matrix<T>>& h) const;

  // Teacher-forced summed token NLL (targets followed by EOS). When `grads`
  // is non-null, adds the gradient of scale * loss to it. Dropout is active
  // when rate > 0 and rng is non-null.
  double loss(const Example& ex, nn::GradientSet<T>* grads = nullptr, T scale = T(1),
              double dropout = 0.0, nn::Rng* rng = nullptr) const;

  template <typename U>
  Seq2Seq<U> cast() const {
    Seq2Seq<U> out(config_, sizes_);
    for (int id = 0; id < params_.size(); ++id) {
      out.params().value(id) = params_.value(id).template cast<U>();
    }
    return out;
  }

 private:
  void build();

  ModelConfig config_;
  VocabSizes sizes_;
  nn::ParameterStore<T> params_;

  int e_word_ = -1;
  int e_lemma_ = -1;
  int e_fine_ = -1;
  int e_coarse_ = -1;
  int e_dec_ = -1;
  std::array<int, kNumControls> e_ctrl_{};
  int e_genre_ = -1;
  std::vector<nn::GruLayer> enc_;
  std::vector<nn::GruLayer> dec_;
  nn::AttentionLayer att_;
  nn::OutputLayer out_;
};

extern template class Seq2Seq<float>;
extern template class Seq2Seq<double>;

}  // namespace styleeq
