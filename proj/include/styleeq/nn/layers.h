#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "styleeq/nn/parameter_store.h"
#include "styleeq/nn/tensor.h"

namespace styleeq::nn {

// ---------------------------------------------------------------- dropout

// Inverted dropout mask: 0 with probability `rate`, 1/(1-rate) otherwise.
template <typename T>
Matrix<T> dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) throw std::invalid_argument("dropout rate must be in [0, 1)");
  Matrix<T> mask(rows, cols);
  const T keep = static_cast<T>(1.0 / (1.0 - rate));
  for (Eigen::Index k = 0; k < mask.size(); ++k) {
    mask.data()[k] = uniform01(rng) < rate ? T(0) : keep;
  }
  return mask;
}

template <typename T>
Vector<T> dropout(const Vector<T>& x, double rate, bool training, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) throw std::invalid_argument("dropout rate must be in [0, 1)");
  if (!training || rate == 0.0) return x;
  return x.cwiseProduct(dropout_mask<T>(x.size(), 1, rate, rng));
}

// -------------------------------------------------------------------- GRU
//
//   r = sigmoid(Wx_r x + bx_r + Wh_r h + bh_r)
//   z = sigmoid(Wx_z x + bx_z + Wh_z h + bh_z)
//   n = tanh(Wx_n x + bx_n + r * (Wh_n h + bh_n))
//   h' = (1 - z) * n + z * h
//
// Gate blocks are stacked [r; z; n] along the rows of Wx (3H x in) and
// Wh (3H x H).

struct GruLayer {
  int input_size = 0;
  int hidden_size = 0;
  int wx = -1;
  int wh = -1;
  int bx = -1;
  int bh = -1;

  template <typename T>
  static GruLayer create(ParameterStore<T>& store, const std::string& prefix, int input,
                         int hidden) {
    GruLayer l;
    l.input_size = input;
    l.hidden_size = hidden;
    l.wx = store.add(prefix + ".wx", 3 * hidden, input);
    l.wh = store.add(prefix + ".wh", 3 * hidden, hidden);
    l.bx = store.add(prefix + ".bx", 3 * hidden, 1, Init::Zero);
    l.bh = store.add(prefix + ".bh", 3 * hidden, 1, Init::Zero);
    return l;
  }
};

template <typename T>
struct GruCache {
  Matrix<T> x;        // variable input, one column per step
  Vector<T> x_const;  // input suffix shared by every step (may be empty)
  Matrix<T> h;        // H x (steps + 1); column 0 is the initial state
  Matrix<T> r, z, n, ghn;

  int steps() const { return static_cast<int>(x.cols()); }
  auto outputs() const { return h.rightCols(h.cols() - 1); }
  Vector<T> last() const { return h.col(h.cols() - 1); }
};

namespace detail {

template <typename T>
void gru_cell(const Matrix<T>& wh, const Matrix<T>& bh, const Vector<T>& gx,
              const Vector<T>& h_prev, Vector<T>& h, Vector<T>* r_out = nullptr,
              Vector<T>* z_out = nullptr, Vector<T>* n_out = nullptr,
              Vector<T>* ghn_out = nullptr) {
  const Eigen::Index H = h_prev.size();
  const Vector<T> gh = wh * h_prev + bh.col(0);
  const Vector<T> r =
      (T(1) / (T(1) + (-(gx.head(H) + gh.head(H))).array().exp())).matrix();
  const Vector<T> z =
      (T(1) / (T(1) + (-(gx.segment(H, H) + gh.segment(H, H))).array().exp())).matrix();
  const Vector<T> ghn = gh.tail(H);
  const Vector<T> n = (gx.tail(H) + r.cwiseProduct(ghn)).array().tanh().matrix();
  h = ((T(1) - z.array()) * n.array() + z.array() * h_prev.array()).matrix();
  if (r_out) *r_out = r;
  if (z_out) *z_out = z;
  if (n_out) *n_out = n;
  if (ghn_out) *ghn_out = ghn;
}

}  // namespace detail

// One recurrence step on a full input vector.
template <typename T>
Vector<T> gru_step(const ParameterStore<T>& store, const GruLayer& layer, const Vector<T>& x,
                   const Vector<T>& h_prev) {
  if (x.size() != layer.input_size || h_prev.size() != layer.hidden_size) {
    throw std::invalid_argument("gru_step: shape mismatch");
  }
  const Vector<T> gx = store.value(layer.wx) * x + store.value(layer.bx).col(0);
  Vector<T> h;
  detail::gru_cell<T>(store.value(layer.wh), store.value(layer.bh), gx, h_prev, h);
  return h;
}

// Input projection for the constant part of the input plus the input bias;
// lets step-wise decoding skip the constant columns of Wx.
template <typename T>
Vector<T> gru_const_projection(const ParameterStore<T>& store, const GruLayer& layer,
                               const Vector<T>& x_const) {
  Vector<T> out = store.value(layer.bx).col(0);
  if (x_const.size() > 0) {
    out += store.value(layer.wx).rightCols(x_const.size()) * x_const;
  }
  return out;
}

// Step with the input split as [x_var; x_const], where const_proj comes from
// gru_const_projection.
template <typename T>
Vector<T> gru_step_split(const ParameterStore<T>& store, const GruLayer& layer,
                         const Vector<T>& x_var, const Vector<T>& const_proj,
                         const Vector<T>& h_prev) {
  const Vector<T> gx = store.value(layer.wx).leftCols(x_var.size()) * x_var + const_proj;
  Vector<T> h;
  detail::gru_cell<T>(store.value(layer.wh), store.value(layer.bh), gx, h_prev, h);
  return h;
}

// One step for B independent states at once; gx is the input projection
// including bx (3H x B), h_prev is H x B.
template <typename T>
Matrix<T> gru_step_batch(const ParameterStore<T>& store, const GruLayer& layer,
                         const Matrix<T>& gx, const Matrix<T>& h_prev) {
  const Eigen::Index H = layer.hidden_size;
  Matrix<T> gh = store.value(layer.wh) * h_prev;
  gh.colwise() += store.value(layer.bh).col(0);
  const auto r = (T(1) / (T(1) + (-(gx.topRows(H) + gh.topRows(H))).array().exp()));
  const Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic> z =
      T(1) / (T(1) + (-(gx.middleRows(H, H) + gh.middleRows(H, H))).array().exp());
  const Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic> n =
      (gx.bottomRows(H).array() + r * gh.bottomRows(H).array()).tanh();
  return ((T(1) - z) * n + z * h_prev.array()).matrix();
}

// Runs the layer over all columns of x; each step sees [x.col(t); x_const].
template <typename T>
void gru_forward(const ParameterStore<T>& store, const GruLayer& layer, const Matrix<T>& x,
                 const Vector<T>& x_const, const Vector<T>& h0, GruCache<T>& cache) {
  const int H = layer.hidden_size;
  if (x.rows() + x_const.size() != layer.input_size || h0.size() != H) {
    throw std::invalid_argument("gru_forward: shape mismatch");
  }
  const Eigen::Index steps = x.cols();
  cache.x = x;
  cache.x_const = x_const;
  cache.h.resize(H, steps + 1);
  cache.r.resize(H, steps);
  cache.z.resize(H, steps);
  cache.n.resize(H, steps);
  cache.ghn.resize(H, steps);
  cache.h.col(0) = h0;

  Matrix<T> gx = store.value(layer.wx).leftCols(x.rows()) * x;
  gx.colwise() += gru_const_projection(store, layer, x_const);

  const Matrix<T>& wh = store.value(layer.wh);
  const Matrix<T>& bh = store.value(layer.bh);
  Vector<T> h, r, z, n, ghn;
  for (Eigen::Index t = 0; t < steps; ++t) {
    const Vector<T> h_prev = cache.h.col(t);
    const Vector<T> gxt = gx.col(t);
    detail::gru_cell<T>(wh, bh, gxt, h_prev, h, &r, &z, &n, &ghn);
    cache.h.col(t + 1) = h;
    cache.r.col(t) = r;
    cache.z.col(t) = z;
    cache.n.col(t) = n;
    cache.ghn.col(t) = ghn;
  }
}

// dH holds the loss gradient w.r.t. each step's output; dh_last is extra
// gradient on the final state (may be empty). Outputs are optional.
template <typename T>
void gru_backward(const ParameterStore<T>& store, const GruLayer& layer,
                  const GruCache<T>& cache, const Matrix<T>& dH, const Vector<T>& dh_last,
                  GradientSet<T>& grads, Matrix<T>* dx, Vector<T>* dx_const,
                  Vector<T>* dh0) {
  const int H = layer.hidden_size;
  const Eigen::Index steps = cache.steps();
  const Matrix<T>& wh = store.value(layer.wh);
  const Matrix<T>& wx = store.value(layer.wx);

  Matrix<T> dgx(3 * H, steps);
  Matrix<T> dgh(3 * H, steps);
  Vector<T> dh = dh_last.size() ? dh_last : Vector<T>::Zero(H);
  for (Eigen::Index t = steps - 1; t >= 0; --t) {
    dh += dH.col(t);
    const auto hp = cache.h.col(t).array();
    const auto r = cache.r.col(t).array();
    const auto z = cache.z.col(t).array();
    const auto n = cache.n.col(t).array();
    const auto ghn = cache.ghn.col(t).array();
    const auto dha = dh.array();

    const Eigen::Array<T, Eigen::Dynamic, 1> dan = dha * (T(1) - z) * (T(1) - n * n);
    const Eigen::Array<T, Eigen::Dynamic, 1> dar = dan * ghn * r * (T(1) - r);
    const Eigen::Array<T, Eigen::Dynamic, 1> daz = dha * (hp - n) * z * (T(1) - z);

    dgx.col(t).head(H) = dar.matrix();
    dgx.col(t).segment(H, H) = daz.matrix();
    dgx.col(t).tail(H) = dan.matrix();
    dgh.col(t).head(H) = dar.matrix();
    dgh.col(t).segment(H, H) = daz.matrix();
    dgh.col(t).tail(H) = (dan * r).matrix();

    Vector<T> dh_prev = (dha * z).matrix();
    dh_prev.noalias() += wh.transpose() * dgh.col(t);
    dh = dh_prev;
  }

  grads[layer.wh].noalias() += dgh * cache.h.leftCols(steps).transpose();
  grads[layer.bh].col(0) += dgh.rowwise().sum();
  const Eigen::Index k = cache.x.rows();
  grads[layer.wx].leftCols(k).noalias() += dgx * cache.x.transpose();
  const Vector<T> dgx_sum = dgx.rowwise().sum();
  grads[layer.bx].col(0) += dgx_sum;
  const Eigen::Index c = cache.x_const.size();
  if (c > 0) {
    grads[layer.wx].rightCols(c).noalias() += dgx_sum * cache.x_const.transpose();
    if (dx_const) *dx_const = wx.rightCols(c).transpose() * dgx_sum;
  }
  if (dx) *dx = wx.leftCols(k).transpose() * dgx;
  if (dh0) *dh0 = dh;
}

// -------------------------------------------------------------- attention
//
//   a_ij = nu^T tanh(W [c_j; h_i]),  alpha_i = softmax_j(a_ij),
//   cbar_i = sum_j alpha_ij c_j

struct AttentionLayer {
  int context_size = 0;
  int query_size = 0;
  int attention_size = 0;
  int w = -1;
  int nu = -1;

  template <typename T>
  static AttentionLayer create(ParameterStore<T>& store, const std::string& prefix,
                               int context, int query, int attention) {
    AttentionLayer l;
    l.context_size = context;
    l.query_size = query;
    l.attention_size = attention;
    l.w = store.add(prefix + ".w", attention, context + query);
    l.nu = store.add(prefix + ".nu", attention, 1);
    return l;
  }
};

template <typename T>
struct AttentionCache {
  Matrix<T> contexts;  // Hc x M
  Matrix<T> queries;   // Hq x N
  std::vector<Matrix<T>> act;  // per query: tanh(W [c_j; h_i]), A x M
  Matrix<T> alpha;     // M x N
};

template <typename T>
struct AttentionResult {
  Vector<T> alpha;
  Vector<T> context;
};

// Free-standing form with explicit weights: W is A x (Hc + Hq).
template <typename T>
AttentionResult<T> additive_attention(const Matrix<T>& contexts, const Vector<T>& query,
                                      const Matrix<T>& w, const Vector<T>& nu) {
  if (contexts.cols() == 0) throw std::invalid_argument("attention over zero contexts");
  const Eigen::Index hc = contexts.rows();
  if (w.cols() != hc + query.size() || w.rows() != nu.size()) {
    throw std::invalid_argument("additive_attention: shape mismatch");
  }
  Matrix<T> pre = w.leftCols(hc) * contexts;
  pre.colwise() += w.rightCols(query.size()) * query;
  const Vector<T> scores = (nu.transpose() * pre.array().tanh().matrix()).transpose();
  AttentionResult<T> out;
  out.alpha = softmax<T>(scores);
  out.context = contexts * out.alpha;
  return out;
}

// Precomputed W_c C for step-wise decoding.
template <typename T>
Matrix<T> attention_context_projection(const ParameterStore<T>& store,
                                       const AttentionLayer& layer, const Matrix<T>& contexts) {
  return store.value(layer.w).leftCols(layer.context_size) * contexts;
}

template <typename T>
AttentionResult<T> attention_step(const ParameterStore<T>& store, const AttentionLayer& layer,
                                  const Matrix<T>& contexts, const Matrix<T>& context_proj,
                                  const Vector<T>& query) {
  Matrix<T> pre = context_proj;
  pre.colwise() += store.value(layer.w).rightCols(layer.query_size) * query;
  const Vector<T> scores =
      (store.value(layer.nu).col(0).transpose() * pre.array().tanh().matrix()).transpose();
  AttentionResult<T> out;
  out.alpha = softmax<T>(scores);
  out.context = contexts * out.alpha;
  return out;
}

// Returns the attended contexts, Hc x N.
template <typename T>
Matrix<T> attention_forward(const ParameterStore<T>& store, const AttentionLayer& layer,
                            const Matrix<T>& contexts, const Matrix<T>& queries,
                            AttentionCache<T>& cache) {
  if (contexts.cols() == 0) throw std::invalid_argument("attention over zero contexts");
  const Matrix<T>& w = store.value(layer.w);
  const Vector<T> nu = store.value(layer.nu).col(0);
  cache.contexts = contexts;
  cache.queries = queries;
  const Matrix<T> pc = w.leftCols(layer.context_size) * contexts;
  const Matrix<T> qh = w.rightCols(layer.query_size) * queries;
  const Eigen::Index n = queries.cols();
  cache.act.assign(n, Matrix<T>());
  cache.alpha.resize(contexts.cols(), n);
  Matrix<T> out(contexts.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix<T> pre = pc;
    pre.colwise() += qh.col(i);
    cache.act[i] = pre.array().tanh().matrix();
    const Vector<T> scores = (nu.transpose() * cache.act[i]).transpose();
    cache.alpha.col(i) = softmax<T>(scores);
    out.col(i) = contexts * cache.alpha.col(i);
  }
  return out;
}

template <typename T>
void attention_backward(const ParameterStore<T>& store, const AttentionLayer& layer,
                        const AttentionCache<T>& cache, const Matrix<T>& d_out,
                        GradientSet<T>& grads, Matrix<T>& d_contexts, Matrix<T>& d_queries) {
  const Matrix<T>& w = store.value(layer.w);
  const Vector<T> nu = store.value(layer.nu).col(0);
  const Matrix<T>& c = cache.contexts;
  const Eigen::Index m = c.cols();
  const Eigen::Index n = cache.queries.cols();
  d_contexts = Matrix<T>::Zero(c.rows(), m);
  Matrix<T> d_pc = Matrix<T>::Zero(layer.attention_size, m);
  Matrix<T> d_qh(layer.attention_size, n);
  Vector<T> d_nu = Vector<T>::Zero(layer.attention_size);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector<T> alpha = cache.alpha.col(i);
    const Vector<T> g = d_out.col(i);
    d_contexts.noalias() += g * alpha.transpose();
    const Vector<T> d_alpha = c.transpose() * g;
    const T dot = alpha.dot(d_alpha);
    const Vector<T> d_score = (alpha.array() * (d_alpha.array() - dot)).matrix();
    const Matrix<T>& act = cache.act[i];
    d_nu.noalias() += act * d_score;
    const Matrix<T> d_pre =
        ((nu * d_score.transpose()).array() * (T(1) - act.array() * act.array())).matrix();
    d_pc += d_pre;
    d_qh.col(i) = d_pre.rowwise().sum();
  }
  grads[layer.nu].col(0) += d_nu;
  grads[layer.w].leftCols(layer.context_size).noalias() += d_pc * c.transpose();
  grads[layer.w].rightCols(layer.query_size).noalias() += d_qh * cache.queries.transpose();
  d_contexts.noalias() += w.leftCols(layer.context_size).transpose() * d_pc;
  d_queries = w.rightCols(layer.query_size).transpose() * d_qh;
}

// ----------------------------------------------------------- output layer
//
//   o = tanh(U [h; cbar] + u),  log p = log_softmax(V o + v)

struct OutputLayer {
  int query_size = 0;
  int context_size = 0;
  int hidden_size = 0;
  int vocab_size = 0;
  int u_w = -1;
  int u_b = -1;
  int v_w = -1;
  int v_b = -1;

  template <typename T>
  static OutputLayer create(ParameterStore<T>& store, const std::string& prefix, int query,
                            int context, int hidden, int vocab) {
    OutputLayer l;
    l.query_size = query;
    l.context_size = context;
    l.hidden_size = hidden;
    l.vocab_size = vocab;
    l.u_w = store.add(prefix + ".U", hidden, query + context);
    l.u_b = store.add(prefix + ".u", hidden, 1, Init::Zero);
    l.v_w = store.add(prefix + ".V", vocab, hidden);
    l.v_b = store.add(prefix + ".v", vocab, 1, Init::Zero);
    return l;
  }
};

template <typename T>
struct OutputCache {
  Matrix<T> input;  // [h; cbar]
  Matrix<T> o;      // tanh activations before dropout
  Matrix<T> mask;   // dropout mask on o (empty when not training)
  Matrix<T> log_probs;
};

// Free-standing form with explicit weights.
template <typename T>
Vector<T> output_layer(const Vector<T>& h, const Vector<T>& cbar, const Matrix<T>& U,
                       const Vector<T>& u, const Matrix<T>& V, const Vector<T>& v) {
  if (U.cols() != h.size() + cbar.size() || U.rows() != u.size() || V.cols() != U.rows() ||
      V.rows() != v.size()) {
    throw std::invalid_argument("output_layer: shape mismatch");
  }
  Vector<T> in(h.size() + cbar.size());
  in << h, cbar;
  const Vector<T> o = (U * in + u).array().tanh().matrix();
  Matrix<T> logits = V * o + v;
  return log_softmax_columns<T>(logits).col(0);
}

template <typename T>
Matrix<T> output_forward(const ParameterStore<T>& store, const OutputLayer& layer,
                         const Matrix<T>& queries, const Matrix<T>& contexts,
                         const Matrix<T>* mask, OutputCache<T>& cache) {
  cache.input.resize(queries.rows() + contexts.rows(), queries.cols());
  cache.input << queries, contexts;
  Matrix<T> pre = store.value(layer.u_w) * cache.input;
  pre.colwise() += store.value(layer.u_b).col(0);
  cache.o = pre.array().tanh().matrix();
  cache.mask = mask ? *mask : Matrix<T>();
  const Matrix<T> o = mask ? Matrix<T>(cache.o.cwiseProduct(*mask)) : cache.o;
  Matrix<T> logits = store.value(layer.v_w) * o;
  logits.colwise() += store.value(layer.v_b).col(0);
  cache.log_probs = log_softmax_columns<T>(logits);
  return cache.log_probs;
}

template <typename T>
void output_backward(const ParameterStore<T>& store, const OutputLayer& layer,
                     const OutputCache<T>& cache, const Matrix<T>& d_logits,
                     GradientSet<T>& grads, Matrix<T>& d_queries, Matrix<T>& d_contexts) {
  const bool masked = cache.mask.size() > 0;
  const Matrix<T> o = masked ? Matrix<T>(cache.o.cwiseProduct(cache.mask)) : cache.o;
  grads[layer.v_w].noalias() += d_logits * o.transpose();
  grads[layer.v_b].col(0) += d_logits.rowwise().sum();
  Matrix<T> d_o = store.value(layer.v_w).transpose() * d_logits;
  if (masked) d_o = d_o.cwiseProduct(cache.mask);
  const Matrix<T> d_pre =
      (d_o.array() * (T(1) - cache.o.array() * cache.o.array())).matrix();
  grads[layer.u_w].noalias() += d_pre * cache.input.transpose();
  grads[layer.u_b].col(0) += d_pre.rowwise().sum();
  const Matrix<T> d_in = store.value(layer.u_w).transpose() * d_pre;
  d_queries = d_in.topRows(layer.query_size);
  d_contexts = d_in.bottomRows(layer.context_size);
}

// Summed negative log-likelihood of targets[i] under column i, and its
// gradient w.r.t. the logits (softmax minus one-hot).
template <typename T>
T nll_loss(const Matrix<T>& log_probs, const std::vector<int>& targets, Matrix<T>* d_logits) {
  T loss = 0;
  if (d_logits) *d_logits = log_probs.array().exp().matrix();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    loss -= log_probs(targets[i], col);
    if (d_logits) (*d_logits)(targets[i], col) -= T(1);
  }
  return loss;
}

}  // namespace styleeq::nn
