#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "styleeq/corpus.h"

namespace styleeq {

enum class AblationMode { All, AblatedN, AblatedNV, AblatedNVA, ContentOnly };

std::string_view ablation_name(AblationMode m);
std::optional<AblationMode> parse_ablation(std::string_view name);
inline constexpr std::array<AblationMode, 5> kAllAblations = {
    AblationMode::All, AblationMode::ContentOnly, AblationMode::AblatedN,
    AblationMode::AblatedNV, AblationMode::AblatedNVA};

// Proper nouns become "PROPN" in every mode except ContentOnly; the ablated
// modes additionally replace NOUN / VERB / ADJ tokens with their coarse tag.
// ContentOnly keeps NOUN, VERB and ADJ tokens unchanged and drops the rest
// (PROPN too unless keep_propn).
std::vector<std::string> ablate(const Sentence& s, AblationMode mode, bool keep_propn = false);

struct ClassifierConfig {
  AblationMode mode = AblationMode::AblatedNVA;
  int dim = 100;
  int max_ngram = 3;
  int bucket_bits = 21;
  double lr = 0.1;
  int epochs = 5;
  std::uint64_t seed = 1;
  bool content_only_keeps_propn = false;
};

using StyleDistribution = std::array<double, kNumStyles>;

struct ClassifierTrainStats {
  std::array<int, kNumStyles> per_class{};
  double final_loss = 0.0;
};

// Hashed bag of word n-grams (1..max_ngram) averaged into a dense vector and
// fed to a linear softmax over the three styles.
class NgramStyleClassifier {
 public:
  static NgramStyleClassifier train(const std::vector<Sentence>& sentences,
                                    const ClassifierConfig& config,
                                    ClassifierTrainStats* stats = nullptr);

  StyleDistribution classify(const Sentence& s) const;
  StyleDistribution classify_ablated(const std::vector<std::string>& ablated) const;
  Style predict(const Sentence& s) const;

  std::vector<std::uint32_t> features(const std::vector<std::string>& ablated) const;

  const ClassifierConfig& config() const { return config_; }
  std::size_t touched_rows() const { return rows_.size(); }

  std::string to_bytes() const;
  static NgramStyleClassifier from_bytes(const std::string& bytes);
  void save(const std::string& path) const;
  static NgramStyleClassifier load(const std::string& path);

 private:
  explicit NgramStyleClassifier(ClassifierConfig config);

  // Untouched buckets keep their seeded initial value, generated on demand.
  void initial_row(std::uint32_t bucket, float* out) const;
  const float* row(std::uint32_t bucket, std::vector<float>& scratch) const;
  std::vector<float>& mutable_row(std::uint32_t bucket);
  void hidden(const std::vector<std::uint32_t>& feats, std::vector<double>& h) const;

  ClassifierConfig config_;
  std::unordered_map<std::uint32_t, std::vector<float>> rows_;
  std::vector<float> output_;  // kNumStyles x dim, row-major
};

struct ClassifierAccuracy {
  double overall = 0.0;
  std::array<double, kNumStyles> per_style{};
  std::array<int, kNumStyles> counts{};
};

ClassifierAccuracy evaluate_classifier(const NgramStyleClassifier& clf,
                                       const std::vector<Sentence>& sentences);

}  // namespace styleeq
