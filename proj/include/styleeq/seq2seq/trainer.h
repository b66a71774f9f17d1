#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "styleeq/seq2seq/model.h"

namespace styleeq {

struct TrainConfig {
  double lr = 0.25;
  double weight_decay = 1e-4;
  int batch = 64;
  double dropout = 0.25;
  int max_epochs = 200;
  std::uint64_t seed = 1;
  int max_decode_len = 60;
  int validate_every = 1;
  int beam = 8;
  double clip_norm = 5.0;
  Split validation_split = Split::Dev;
  // Validate on at most this many sentences (0 = all).
  int validation_limit = 0;
  // Stop once validation BLEU reaches this value (0 = never).
  double target_bleu = 0.0;
  int threads = 1;

  void validate() const;
};

struct EpochLog {
  int epoch = 0;
  double loss = 0.0;  // mean token NLL over the epoch
  std::optional<double> bleu;
  bool best = false;

  std::string to_json() const;
  static EpochLog from_json(const std::string& text);
};

struct TrainState {
  int epoch = 0;  // last completed epoch
  int best_epoch = 0;
  double best_bleu = -1.0;
  bool stopped = false;
  std::vector<EpochLog> log;
};

struct TrainHooks {
  std::function<void(const EpochLog&)> on_epoch;
  // Called after every epoch with the current parameters, the best
  // parameters so far and the state; used for checkpointing.
  std::function<void(const nn::ParameterStore<float>& current,
                     const nn::ParameterStore<float>& best, const TrainState& state)>
      on_checkpoint;
};

struct ResumePoint {
  nn::ParameterStore<float> current;
  nn::ParameterStore<float> best;
  TrainState state;
};

// Reconstruction training: teacher-forced summed token NLL divided by the
// batch size, global-norm clipping, SGD with weight decay. Validation
// decodes `validation` with beam search; the returned model holds the
// parameters of the best-BLEU validation epoch (the initial parameters if
// no epoch was validated). Without `resume` the model is initialized from
// cfg.seed first.
TrainState train(Seq2Seq<float>& model, const std::vector<Example>& train_set,
                 const std::vector<Example>& validation, const Vocabulary& vocab,
                 const TrainConfig& cfg, const TrainHooks& hooks = {},
                 const ResumePoint* resume = nullptr);

// Mixes a seed with coordinates into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace styleeq
