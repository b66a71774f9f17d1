#include "styleeq/seq2seq/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "styleeq/eval.h"

namespace styleeq {

void TrainConfig::validate() const {
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be positive");
  if (weight_decay < 0.0) throw std::invalid_argument("weight_decay must be non-negative");
  if (batch < 1) throw std::invalid_argument("batch must be >= 1");
  if (dropout < 0.0 || dropout >= 1.0) throw std::invalid_argument("dropout must be in [0, 1)");
  if (max_epochs < 0) throw std::invalid_argument("max_epochs must be >= 0");
  if (max_decode_len < 1) throw std::invalid_argument("max_decode_len must be >= 1");
  if (validate_every < 1) throw std::invalid_argument("validate_every must be >= 1");
  if (beam < 1) throw std::invalid_argument("beam must be >= 1");
  if (clip_norm < 0.0) throw std::invalid_argument("clip_norm must be non-negative");
  if (validation_limit < 0) throw std::invalid_argument("validation_limit must be >= 0");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::string EpochLog::to_json() const {
  nlohmann::ordered_json j;
  j["epoch"] = epoch;
  j["loss"] = loss;
  j["bleu"] = bleu ? nlohmann::ordered_json(*bleu) : nlohmann::ordered_json(nullptr);
  j["best"] = best;
  return j.dump();
}

EpochLog EpochLog::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  EpochLog e;
  e.epoch = j.at("epoch").get<int>();
  e.loss = j.at("loss").get<double>();
  if (!j.at("bleu").is_null()) e.bleu = j.at("bleu").get<double>();
  e.best = j.at("best").get<bool>();
  return e;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

namespace {

struct BatchResult {
  double loss = 0.0;
  std::size_t tokens = 0;
};

void run_examples(const Seq2Seq<float>& model, const std::vector<Example>& data,
                  const std::vector<std::size_t>& order, std::size_t begin, std::size_t end,
                  float scale, const TrainConfig& cfg, int epoch, nn::GradientSet<float>& grads,
                  BatchResult& out) {
  for (std::size_t i = begin; i < end; ++i) {
    const std::size_t idx = order[i];
    nn::Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch), idx));
    out.loss += model.loss(data[idx], &grads, scale, cfg.dropout, &rng);
    out.tokens += data[idx].target.size() + 1;
  }
}

double validate(const Seq2Seq<float>& model, const std::vector<Example>& validation,
                const Vocabulary& vocab, const TrainConfig& cfg) {
  if (cfg.validation_limit > 0 && validation.size() > static_cast<std::size_t>(cfg.validation_limit)) {
    std::vector<Example> subset(validation.begin(), validation.begin() + cfg.validation_limit);
    return reconstruction_bleu(model, vocab, subset, cfg.beam, cfg.max_decode_len);
  }
  return reconstruction_bleu(model, vocab, validation, cfg.beam, cfg.max_decode_len);
}

}  // namespace

TrainState train(Seq2Seq<float>& model, const std::vector<Example>& train_set,
                 const std::vector<Example>& validation, const Vocabulary& vocab,
                 const TrainConfig& cfg, const TrainHooks& hooks, const ResumePoint* resume) {
  cfg.validate();
  if (train_set.empty() && cfg.max_epochs > 0) throw std::invalid_argument("empty training set");
  auto& params = model.params();
  TrainState state;
  nn::ParameterStore<float> best;
  if (resume) {
    state = resume->state;
    best = resume->best;
    for (int id = 0; id < params.size(); ++id) params.value(id) = resume->current.value(id);
  } else {
    model.initialize(cfg.seed);
    best = params.cast<float>();
  }
  params.zero_grad();

  const int threads = std::max(1, cfg.threads);
  std::vector<nn::GradientSet<float>> thread_grads;
  for (int t = 0; t < threads; ++t) thread_grads.push_back(params.make_gradients());

  for (int epoch = state.epoch + 1; epoch <= cfg.max_epochs && !state.stopped; ++epoch) {
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 shuffler(derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch), ~0ULL));
    std::shuffle(order.begin(), order.end(), shuffler);

    double epoch_loss = 0.0;
    std::size_t epoch_tokens = 0;
    int batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch, ++batch_index) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch));
      const float scale = 1.0f / static_cast<float>(end - start);
      std::vector<BatchResult> results(threads);
      for (auto& g : thread_grads) {
        for (auto& m : g) m.setZero();
      }
      const std::size_t n = end - start;
      const std::size_t chunk = (n + threads - 1) / threads;
      if (threads == 1) {
        run_examples(model, train_set, order, start, end, scale, cfg, epoch, thread_grads[0],
                     results[0]);
      } else {
        std::vector<std::thread> workers;
        for (int t = 0; t < threads; ++t) {
          const std::size_t b = start + std::min(n, t * chunk);
          const std::size_t e = start + std::min(n, (t + 1) * chunk);
          workers.emplace_back([&, b, e, t] {
            run_examples(model, train_set, order, b, e, scale, cfg, epoch, thread_grads[t],
                         results[t]);
          });
        }
        for (auto& w : workers) w.join();
      }
      double batch_loss = 0.0;
      for (int t = 0; t < threads; ++t) {
        params.accumulate(thread_grads[t]);
        batch_loss += results[t].loss;
        epoch_tokens += results[t].tokens;
      }
      if (!std::isfinite(batch_loss)) {
        throw std::runtime_error("non-finite loss at epoch " + std::to_string(epoch) +
                                 ", batch " + std::to_string(batch_index));
      }
      epoch_loss += batch_loss;
      nn::clip_grad_norm(params, cfg.clip_norm);
      try {
        nn::sgd_step(params, cfg.lr, cfg.weight_decay);
      } catch (const nn::NonFiniteGradient& e) {
        throw std::runtime_error(std::string(e.what()) + " at epoch " + std::to_string(epoch) +
                                 ", batch " + std::to_string(batch_index));
      }
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.loss = epoch_tokens ? epoch_loss / static_cast<double>(epoch_tokens) : 0.0;
    const bool validate_now =
        !validation.empty() && (epoch % cfg.validate_every == 0 || epoch == cfg.max_epochs);
    if (validate_now) {
      entry.bleu = validate(model, validation, vocab, cfg);
      if (*entry.bleu > state.best_bleu) {
        entry.best = true;
        state.best_bleu = *entry.bleu;
        state.best_epoch = epoch;
        for (int id = 0; id < params.size(); ++id) best.value(id) = params.value(id);
      }
      if (cfg.target_bleu > 0.0 && *entry.bleu >= cfg.target_bleu) state.stopped = true;
    }
    state.epoch = epoch;
    state.log.push_back(entry);
    if (hooks.on_epoch) hooks.on_epoch(entry);
    if (hooks.on_checkpoint) hooks.on_checkpoint(params, best, state);
  }

  if (validation.empty() && state.epoch > 0) {
    // Without validation data the last epoch is kept.
    for (int id = 0; id < params.size(); ++id) best.value(id) = params.value(id);
    state.best_epoch = state.epoch;
  }
  for (int id = 0; id < params.size(); ++id) params.value(id) = best.value(id);
  params.zero_grad();
  return state;
}

}  // namespace styleeq
