#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "styleeq/seq2seq/model.h"
#include "styleeq/seq2seq/trainer.h"

namespace styleeq {

struct ModelHeader {
  int format_version = 1;
  ModelConfig config;
  VocabSizes sizes;
  std::string vocab_hash;
  std::string wordlist_hash;
  std::vector<std::string> control_names;

  std::string to_json() const;
  static ModelHeader from_json(const std::string& text);
};

class ArtifactMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelHeader model_header(const Seq2Seq<float>& model, const std::string& vocab_hash,
                         const std::string& wordlist_hash);

struct LoadedModel {
  ModelHeader header;
  std::unique_ptr<Seq2Seq<float>> model;
};

// Magic, architecture JSON header, parameter blob.
std::string model_to_bytes(const Seq2Seq<float>& model, const std::string& vocab_hash,
                           const std::string& wordlist_hash);
LoadedModel model_from_bytes(const std::string& bytes);
void save_model(const std::string& path, const Seq2Seq<float>& model,
                const std::string& vocab_hash, const std::string& wordlist_hash);
LoadedModel load_model(const std::string& path);

// Throws ArtifactMismatch when the vocabulary differs from the one the
// model was trained with.
void check_vocab(const ModelHeader& header, const Vocabulary& vocab);

void save_checkpoint(const std::string& path, const ModelHeader& header,
                     const nn::ParameterStore<float>& current,
                     const nn::ParameterStore<float>& best, const TrainState& state);
// The header must match `header`.
ResumePoint load_checkpoint(const std::string& path, const ModelHeader& header,
                            const Seq2Seq<float>& architecture);

}  // namespace styleeq
