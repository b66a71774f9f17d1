#include "styleeq/seq2seq/model.h"

#include <stdexcept>

#include "json.hpp"

namespace styleeq {

using nn::Matrix;
using nn::Vector;

std::string_view model_kind_name(ModelKind k) {
  return k == ModelKind::StyleEQ ? "styleeq" : "baseline";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "styleeq") return ModelKind::StyleEQ;
  if (name == "baseline" || name == "genre") return ModelKind::Genre;
  return std::nullopt;
}

void ModelConfig::validate() const {
  for (int v : {word_emb, lemma_emb, fine_emb, coarse_emb, hidden, layers, dec_emb, ctrl_emb,
                perceptron}) {
    if (v <= 0) throw std::invalid_argument("model sizes must be positive");
  }
}

std::string ModelConfig::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = model_kind_name(kind);
  j["word_emb"] = word_emb;
  j["lemma_emb"] = lemma_emb;
  j["fine_emb"] = fine_emb;
  j["coarse_emb"] = coarse_emb;
  j["hidden"] = hidden;
  j["layers"] = layers;
  j["dec_emb"] = dec_emb;
  j["ctrl_emb"] = ctrl_emb;
  j["perceptron"] = perceptron;
  return j.dump();
}

ModelConfig ModelConfig::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ModelConfig c;
  auto kind = parse_model_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::runtime_error("unknown model kind in config");
  c.kind = *kind;
  c.word_emb = j.at("word_emb").get<int>();
  c.lemma_emb = j.at("lemma_emb").get<int>();
  c.fine_emb = j.at("fine_emb").get<int>();
  c.coarse_emb = j.at("coarse_emb").get<int>();
  c.hidden = j.at("hidden").get<int>();
  c.layers = j.at("layers").get<int>();
  c.dec_emb = j.at("dec_emb").get<int>();
  c.ctrl_emb = j.at("ctrl_emb").get<int>();
  c.perceptron = j.at("perceptron").get<int>();
  c.validate();
  return c;
}

VocabSizes VocabSizes::of(const Vocabulary& v) {
  return {v.token.size(), v.lemma.size(), v.fine_pos.size(), v.coarse_pos.size()};
}

EncoderInput encode_content(const Vocabulary& vocab, const ContentSequence& content) {
  EncoderInput in;
  if (content.empty()) {
    in.word = {IndexMap::kBos};
    in.lemma = {IndexMap::kBos};
    in.fine = {IndexMap::kBos};
    in.coarse = {IndexMap::kBos};
    return in;
  }
  for (std::size_t i = 0; i < content.size(); ++i) {
    in.word.push_back(vocab.token.id(content.tokens[i]));
    in.lemma.push_back(vocab.lemma.id(content.lemmas[i]));
    in.fine.push_back(vocab.fine_pos.id(content.fine_pos[i]));
    in.coarse.push_back(vocab.coarse_pos.id(content.coarse_pos[i]));
  }
  return in;
}

std::vector<int> token_ids(const Vocabulary& vocab, const std::vector<std::string>& tokens) {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab.token.id(t));
  return ids;
}

std::vector<std::string> token_strings(const Vocabulary& vocab, const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == IndexMap::kEos && i + 1 == ids.size()) break;
    out.push_back(vocab.token.str(ids[i]));
  }
  return out;
}

Example make_example(const Vocabulary& vocab, const WordListSet& wordlists, const Sentence& s) {
  Example ex;
  ex.id = s.id;
  ex.source = encode_content(vocab, strip_control_words(s, wordlists));
  ex.style.controls = extract_controls(s, wordlists);
  ex.style.genre = s.style;
  ex.target = token_ids(vocab, s.tokens);
  ex.reference = s.tokens;
  return ex;
}

std::vector<Example> make_examples(const Vocabulary& vocab, const WordListSet& wordlists,
                                   const std::vector<Sentence>& sentences) {
  std::vector<Example> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(make_example(vocab, wordlists, s));
  return out;
}

// ------------------------------------------------------------------ model

template <typename T>
Seq2Seq<T>::Seq2Seq(const ModelConfig& config, const VocabSizes& sizes)
    : config_(config), sizes_(sizes) {
  config_.validate();
  if (sizes.token <= IndexMap::kNumReserved || sizes.lemma < IndexMap::kNumReserved ||
      sizes.fine < IndexMap::kNumReserved || sizes.coarse < IndexMap::kNumReserved) {
    throw std::invalid_argument("vocabulary sizes too small");
  }
  build();
}

template <typename T>
void Seq2Seq<T>::build() {
  auto& p = params_;
  const ModelConfig& c = config_;
  e_word_ = p.add("enc.emb.word", c.word_emb, sizes_.token);
  e_lemma_ = p.add("enc.emb.lemma", c.lemma_emb, sizes_.lemma);
  e_fine_ = p.add("enc.emb.fine", c.fine_emb, sizes_.fine);
  e_coarse_ = p.add("enc.emb.coarse", c.coarse_emb, sizes_.coarse);
  for (int l = 0; l < c.layers; ++l) {
    const int in = l == 0 ? c.encoder_input() : c.hidden;
    enc_.push_back(nn::GruLayer::create(p, "enc.gru" + std::to_string(l), in, c.hidden));
  }
  e_dec_ = p.add("dec.emb", c.dec_emb, sizes_.token);
  if (c.kind == ModelKind::StyleEQ) {
    for (Control k : all_controls()) {
      e_ctrl_[control_index(k)] =
          p.add("dec.ctrl." + std::string(control_name(k)), c.ctrl_emb, kNumBuckets);
    }
  } else {
    e_genre_ = p.add("dec.genre", c.style_width(), kNumStyles);
  }
  for (int l = 0; l < c.layers; ++l) {
    const int in = l == 0 ? c.rho_width() : c.hidden;
    dec_.push_back(nn::GruLayer::create(p, "dec.gru" + std::to_string(l), in, c.hidden));
  }
  att_ = nn::AttentionLayer::create(p, "dec.att", c.hidden, c.hidden, c.hidden);
  out_ = nn::OutputLayer::create(p, "dec.out", c.hidden, c.hidden, c.perceptron, sizes_.token);
}

template <typename T>
Vector<T> Seq2Seq<T>::style_vector(const StyleSpec& style) const {
  if (config_.kind == ModelKind::Genre) return params_.value(e_genre_).col(style_index(style.genre));
  const int w = config_.ctrl_emb;
  Vector<T> v(config_.style_width());
  for (int k = 0; k < kNumControls; ++k) {
    const int bucket = bucket_count(style.controls.counts[k]);
    v.segment(k * w, w) = params_.value(e_ctrl_[k]).col(bucket);
  }
  return v;
}

namespace {

template <typename T>
Matrix<T> gather(const Matrix<T>& table, const std::vector<int>& ids) {
  Matrix<T> out(table.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= table.cols()) throw std::out_of_range("embedding id out of range");
    out.col(static_cast<Eigen::Index>(i)) = table.col(ids[i]);
  }
  return out;
}

template <typename T>
void scatter_add(Matrix<T>& grad, const std::vector<int>& ids, const Matrix<T>& d) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    grad.col(ids[i]) += d.col(static_cast<Eigen::Index>(i));
  }
}

template <typename T>
Matrix<T> encoder_embeddings(const nn::ParameterStore<T>& p, int ew, int el, int ef, int ec,
                             const EncoderInput& in, int rows) {
  const Eigen::Index m = static_cast<Eigen::Index>(in.size());
  if (m == 0) throw std::invalid_argument("empty encoder input");
  Matrix<T> x(rows, m);
  Eigen::Index r = 0;
  for (auto [id, ids] : {std::pair{ew, &in.word}, std::pair{el, &in.lemma},
                         std::pair{ef, &in.fine}, std::pair{ec, &in.coarse}}) {
    const Matrix<T> g = gather(p.value(id), *ids);
    x.middleRows(r, g.rows()) = g;
    r += g.rows();
  }
  return x;
}

template <typename T>
Matrix<T> masked(const Matrix<T>& x, const Matrix<T>& mask) {
  return mask.size() ? Matrix<T>(x.cwiseProduct(mask)) : x;
}

}  // namespace

template <typename T>
EncoderState<T> Seq2Seq<T>::encode(const EncoderInput& input, const StyleSpec& style) const {
  EncoderState<T> st;
  Matrix<T> x = encoder_embeddings(params_, e_word_, e_lemma_, e_fine_, e_coarse_, input,
                                   config_.encoder_input());
  const Vector<T> none;
  for (const auto& layer : enc_) {
    nn::GruCache<T> cache;
    nn::gru_forward<T>(params_, layer, x, none, Vector<T>::Zero(config_.hidden), cache);
    x = cache.outputs();
    st.final_states.push_back(cache.last());
  }
  st.contexts = x;
  st.context_proj = nn::attention_context_projection(params_, att_, st.contexts);
  st.style = style_vector(style);
  st.style_proj = nn::gru_const_projection(params_, dec_[0], st.style);
  return st;
}

template <typename T>
std::vector<Matrix<T>> Seq2Seq<T>::initial_decoder_state(const EncoderState<T>& enc,
                                                         int batch) const {
  std::vector<Matrix<T>> h;
  for (const auto& f : enc.final_states) h.push_back(f.replicate(1, batch));
  return h;
}

template <typename T>
Matrix<T> Seq2Seq<T>::decode_step(const EncoderState<T>& enc, const std::vector<int>& y_prev,
                                  std::vector<Matrix<T>>& h) const {
  const Eigen::Index b = static_cast<Eigen::Index>(y_prev.size());
  if (h.size() != dec_.size() || h[0].cols() != b) {
    throw std::invalid_argument("decode_step: state shape mismatch");
  }
  const Matrix<T> y = gather(params_.value(e_dec_), y_prev);
  Matrix<T> gx = params_.value(dec_[0].wx).leftCols(config_.dec_emb) * y;
  gx.colwise() += enc.style_proj;
  h[0] = nn::gru_step_batch(params_, dec_[0], gx, h[0]);
  for (std::size_t l = 1; l < dec_.size(); ++l) {
    Matrix<T> g = params_.value(dec_[l].wx) * h[l - 1];
    g.colwise() += params_.value(dec_[l].bx).col(0);
    h[l] = nn::gru_step_batch(params_, dec_[l], g, h[l]);
  }
  const Matrix<T>& q = h.back();
  Matrix<T> cbar(config_.hidden, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const Vector<T> qi = q.col(i);
    cbar.col(i) = nn::attention_step(params_, att_, enc.contexts, enc.context_proj, qi).context;
  }
  nn::OutputCache<T> cache;
  return nn::output_forward<T>(params_, out_, q, cbar, nullptr, cache);
}

template <typename T>
double Seq2Seq<T>::loss(const Example& ex, nn::GradientSet<T>* grads, T scale, double dropout,
                        nn::Rng* rng) const {
  const bool train = dropout > 0.0 && rng != nullptr;
  auto mask = [&](Eigen::Index rows, Eigen::Index cols) {
    return train ? nn::dropout_mask<T>(rows, cols, dropout, *rng) : Matrix<T>();
  };
  const int L = config_.layers;
  const Vector<T> none;

  // Encoder.
  const Matrix<T> x_raw = encoder_embeddings(params_, e_word_, e_lemma_, e_fine_, e_coarse_,
                                             ex.source, config_.encoder_input());
  const Eigen::Index m = x_raw.cols();
  const Matrix<T> mask_x = mask(x_raw.rows(), m);
  std::vector<nn::GruCache<T>> enc(L);
  std::vector<Matrix<T>> enc_mask(L);
  Matrix<T> x = masked(x_raw, mask_x);
  for (int l = 0; l < L; ++l) {
    nn::gru_forward<T>(params_, enc_[l], x, none, Vector<T>::Zero(config_.hidden), enc[l]);
    enc_mask[l] = mask(config_.hidden, m);
    x = masked(Matrix<T>(enc[l].outputs()), enc_mask[l]);
  }
  const Matrix<T> contexts = x;

  // Decoder, teacher forced.
  std::vector<int> y_in{IndexMap::kBos};
  y_in.insert(y_in.end(), ex.target.begin(), ex.target.end());
  std::vector<int> y_out(ex.target.begin(), ex.target.end());
  y_out.push_back(IndexMap::kEos);
  const Eigen::Index n = static_cast<Eigen::Index>(y_in.size());

  const Matrix<T> mask_y = mask(config_.dec_emb, n);
  const Matrix<T> mask_s = mask(config_.style_width(), 1);
  Matrix<T> y = masked(gather(params_.value(e_dec_), y_in), mask_y);
  const Vector<T> s = mask_s.size() ? Vector<T>(style_vector(ex.style).cwiseProduct(mask_s.col(0)))
                                    : style_vector(ex.style);
  std::vector<nn::GruCache<T>> dec(L);
  std::vector<Matrix<T>> dec_mask(L);
  for (int l = 0; l < L; ++l) {
    nn::gru_forward<T>(params_, dec_[l], y, l == 0 ? s : none, enc[l].last(), dec[l]);
    dec_mask[l] = mask(config_.hidden, n);
    y = masked(Matrix<T>(dec[l].outputs()), dec_mask[l]);
  }
  const Matrix<T> q = y;

  nn::AttentionCache<T> att_cache;
  const Matrix<T> cbar = nn::attention_forward<T>(params_, att_, contexts, q, att_cache);
  const Matrix<T> mask_o = mask(config_.perceptron, n);
  nn::OutputCache<T> out_cache;
  const Matrix<T> log_probs =
      nn::output_forward<T>(params_, out_, q, cbar, train ? &mask_o : nullptr, out_cache);

  Matrix<T> d_logits;
  const T loss = nn::nll_loss<T>(log_probs, y_out, grads ? &d_logits : nullptr);
  if (!grads) return static_cast<double>(loss);
  nn::GradientSet<T>& g = *grads;
  d_logits *= scale;

  // Backward.
  Matrix<T> d_q, d_cbar;
  nn::output_backward<T>(params_, out_, out_cache, d_logits, g, d_q, d_cbar);
  Matrix<T> d_contexts, d_q_att;
  nn::attention_backward<T>(params_, att_, att_cache, d_cbar, g, d_contexts, d_q_att);
  Matrix<T> d_y = d_q + d_q_att;

  std::vector<Vector<T>> d_enc_final(L);
  Vector<T> d_style;
  for (int l = L - 1; l >= 0; --l) {
    const Matrix<T> d_out = masked(d_y, dec_mask[l]);
    Matrix<T> d_in;
    nn::gru_backward<T>(params_, dec_[l], dec[l], d_out, none, g, &d_in, l == 0 ? &d_style : nullptr,
                     &d_enc_final[l]);
    d_y = d_in;
  }
  scatter_add(g[e_dec_], y_in, masked(d_y, mask_y));
  if (mask_s.size()) d_style = d_style.cwiseProduct(mask_s.col(0));
  if (config_.kind == ModelKind::Genre) {
    g[e_genre_].col(style_index(ex.style.genre)) += d_style;
  } else {
    const int w = config_.ctrl_emb;
    for (int k = 0; k < kNumControls; ++k) {
      g[e_ctrl_[k]].col(bucket_count(ex.style.controls.counts[k])) += d_style.segment(k * w, w);
    }
  }

  Matrix<T> d_x = d_contexts;
  for (int l = L - 1; l >= 0; --l) {
    const Matrix<T> d_out = masked(d_x, enc_mask[l]);
    Matrix<T> d_in;
    nn::gru_backward<T>(params_, enc_[l], enc[l], d_out, d_enc_final[l], g, &d_in, nullptr, nullptr);
    d_x = d_in;
  }
  d_x = masked(d_x, mask_x);
  Eigen::Index r = 0;
  for (auto [id, ids] : {std::pair{e_word_, &ex.source.word}, std::pair{e_lemma_, &ex.source.lemma},
                         std::pair{e_fine_, &ex.source.fine}, std::pair{e_coarse_, &ex.source.coarse}}) {
    const Eigen::Index rows = params_.value(id).rows();
    scatter_add(g[id], *ids, Matrix<T>(d_x.middleRows(r, rows)));
    r += rows;
  }
  return static_cast<double>(loss);
}

template class Seq2Seq<float>;
template class Seq2Seq<double>;

}  // namespace styleeq
