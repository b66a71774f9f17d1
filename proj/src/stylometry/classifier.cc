#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "styleeq/binary_io.h"
#include "styleeq/stylometry.h"

namespace styleeq {
namespace {

constexpr char kMagic[9] = "STEQCLF1";
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kHashSeed = 0x5eed5eed5eed5eedULL;
constexpr std::uint64_t kMultiplier = 0x9E3779B97F4A7C15ULL;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void softmax(std::vector<double>& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double& x : v) x /= sum;
}

nlohmann::json config_json(const ClassifierConfig& c) {
  return {{"mode", ablation_name(c.mode)},
          {"dim", c.dim},
          {"max_ngram", c.max_ngram},
          {"bucket_bits", c.bucket_bits},
          {"lr", c.lr},
          {"epochs", c.epochs},
          {"seed", c.seed},
          {"content_only_keeps_propn", c.content_only_keeps_propn}};
}

ClassifierConfig config_from_json(const nlohmann::json& j) {
  ClassifierConfig c;
  auto mode = parse_ablation(j.at("mode").get<std::string>());
  if (!mode) throw std::runtime_error("classifier: unknown ablation mode");
  c.mode = *mode;
  c.dim = j.at("dim").get<int>();
  c.max_ngram = j.at("max_ngram").get<int>();
  c.bucket_bits = j.at("bucket_bits").get<int>();
  c.lr = j.at("lr").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.content_only_keeps_propn = j.at("content_only_keeps_propn").get<bool>();
  return c;
}

}  // namespace

NgramStyleClassifier::NgramStyleClassifier(ClassifierConfig config)
    : config_(config), output_(static_cast<std::size_t>(kNumStyles) * config.dim, 0.0f) {
  if (config_.dim <= 0 || config_.max_ngram <= 0 || config_.bucket_bits <= 0 ||
      config_.bucket_bits > 32) {
    throw std::invalid_argument("classifier: invalid hyperparameters");
  }
}

std::vector<std::uint32_t> NgramStyleClassifier::features(
    const std::vector<std::string>& ablated) const {
  std::vector<std::uint64_t> token_hash(ablated.size());
  for (std::size_t i = 0; i < ablated.size(); ++i) token_hash[i] = fnv1a(ablated[i]);
  std::vector<std::uint32_t> out;
  const int shift = 64 - config_.bucket_bits;
  for (std::size_t i = 0; i < ablated.size(); ++i) {
    std::uint64_t h = kHashSeed;
    for (int n = 1; n <= config_.max_ngram && i + n <= ablated.size(); ++n) {
      h = (h ^ token_hash[i + n - 1]) * kMultiplier;
      std::uint64_t mixed = (h ^ static_cast<std::uint64_t>(n)) * kMultiplier;
      out.push_back(static_cast<std::uint32_t>(mixed >> shift));
    }
  }
  return out;
}

void NgramStyleClassifier::initial_row(std::uint32_t bucket, float* out) const {
  const float bound = 1.0f / static_cast<float>(config_.dim);
  std::uint64_t state = splitmix64(config_.seed ^ (static_cast<std::uint64_t>(bucket) << 20));
  for (int j = 0; j < config_.dim; ++j) {
    state = splitmix64(state);
    const double u = static_cast<double>(state >> 11) * 0x1.0p-53;  // [0, 1)
    out[j] = static_cast<float>((2.0 * u - 1.0) * bound);
  }
}

const float* NgramStyleClassifier::row(std::uint32_t bucket, std::vector<float>& scratch) const {
  auto it = rows_.find(bucket);
  if (it != rows_.end()) return it->second.data();
  scratch.resize(config_.dim);
  initial_row(bucket, scratch.data());
  return scratch.data();
}

std::vector<float>& NgramStyleClassifier::mutable_row(std::uint32_t bucket) {
  auto [it, inserted] = rows_.try_emplace(bucket);
  if (inserted) {
    it->second.resize(config_.dim);
    initial_row(bucket, it->second.data());
  }
  return it->second;
}

void NgramStyleClassifier::hidden(const std::vector<std::uint32_t>& feats,
                                  std::vector<double>& h) const {
  h.assign(config_.dim, 0.0);
  if (feats.empty()) return;
  std::vector<float> scratch;
  for (std::uint32_t f : feats) {
    const float* r = row(f, scratch);
    for (int j = 0; j < config_.dim; ++j) h[j] += r[j];
  }
  for (double& x : h) x /= static_cast<double>(feats.size());
}

StyleDistribution NgramStyleClassifier::classify_ablated(
    const std::vector<std::string>& ablated) const {
  std::vector<double> h;
  hidden(features(ablated), h);
  std::vector<double> scores(kNumStyles, 0.0);
  for (int k = 0; k < kNumStyles; ++k) {
    const float* w = &output_[static_cast<std::size_t>(k) * config_.dim];
    for (int j = 0; j < config_.dim; ++j) scores[k] += w[j] * h[j];
  }
  softmax(scores);
  StyleDistribution p{};
  std::copy(scores.begin(), scores.end(), p.begin());
  return p;
}

StyleDistribution NgramStyleClassifier::classify(const Sentence& s) const {
  return classify_ablated(ablate(s, config_.mode, config_.content_only_keeps_propn));
}

Style NgramStyleClassifier::predict(const Sentence& s) const {
  StyleDistribution p = classify(s);
  return static_cast<Style>(std::max_element(p.begin(), p.end()) - p.begin());
}

NgramStyleClassifier NgramStyleClassifier::train(const std::vector<Sentence>& sentences,
                                                 const ClassifierConfig& config,
                                                 ClassifierTrainStats* stats) {
  std::array<int, kNumStyles> raw{};
  for (const Sentence& s : sentences) ++raw[style_index(s.style)];
  for (Style st : kAllStyles) {
    if (raw[style_index(st)] == 0) {
      throw std::runtime_error("classifier: no training sentences for style " +
                               std::string(style_name(st)));
    }
  }
  const std::vector<Sentence> balanced = balance_classes(sentences, config.seed);

  NgramStyleClassifier clf(config);
  std::vector<std::vector<std::uint32_t>> feats;
  std::vector<int> labels;
  feats.reserve(balanced.size());
  for (const Sentence& s : balanced) {
    feats.push_back(clf.features(ablate(s, config.mode, config.content_only_keeps_propn)));
    labels.push_back(style_index(s.style));
  }
  if (stats) {
    stats->per_class = {};
    for (int y : labels) ++stats->per_class[y];
  }

  const int dim = config.dim;
  const double total = static_cast<double>(config.epochs) * static_cast<double>(feats.size());
  double processed = 0.0;
  double epoch_loss = 0.0;
  std::vector<std::size_t> order(feats.size());
  std::vector<double> h(dim), grad_h(dim);
  std::vector<double> scores(kNumStyles);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(config.seed * 1000003ULL + static_cast<std::uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), rng);
    epoch_loss = 0.0;
    for (std::size_t idx : order) {
      const double lr = config.lr * (1.0 - processed / total);
      processed += 1.0;
      const auto& f = feats[idx];
      if (f.empty()) continue;
      clf.hidden(f, h);
      for (int k = 0; k < kNumStyles; ++k) {
        const float* w = &clf.output_[static_cast<std::size_t>(k) * dim];
        scores[k] = 0.0;
        for (int j = 0; j < dim; ++j) scores[k] += w[j] * h[j];
      }
      softmax(scores);
      epoch_loss -= std::log(std::max(scores[labels[idx]], 1e-300));
      std::fill(grad_h.begin(), grad_h.end(), 0.0);
      for (int k = 0; k < kNumStyles; ++k) {
        const double alpha = lr * ((k == labels[idx] ? 1.0 : 0.0) - scores[k]);
        float* w = &clf.output_[static_cast<std::size_t>(k) * dim];
        for (int j = 0; j < dim; ++j) {
          grad_h[j] += alpha * w[j];
          w[j] += static_cast<float>(alpha * h[j]);
        }
      }
      const double scale = 1.0 / static_cast<double>(f.size());
      for (std::uint32_t b : f) {
        std::vector<float>& r = clf.mutable_row(b);
        for (int j = 0; j < dim; ++j) r[j] += static_cast<float>(grad_h[j] * scale);
      }
    }
  }
  if (stats && !feats.empty()) stats->final_loss = epoch_loss / static_cast<double>(feats.size());
  return clf;
}

std::string NgramStyleClassifier::to_bytes() const {
  std::ostringstream out(std::ios::binary);
  binio::write_magic(out, kMagic);
  binio::write_pod<std::uint32_t>(out, kVersion);
  binio::write_string(out, config_json(config_).dump());
  binio::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(config_.dim));
  binio::write_floats(out, output_);
  std::vector<std::uint32_t> ids;
  ids.reserve(rows_.size());
  for (const auto& [id, r] : rows_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  binio::write_pod<std::uint64_t>(out, ids.size());
  for (std::uint32_t id : ids) {
    binio::write_pod<std::uint32_t>(out, id);
    binio::write_floats(out, rows_.at(id));
  }
  return out.str();
}

NgramStyleClassifier NgramStyleClassifier::from_bytes(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  binio::expect_magic(in, kMagic);
  if (binio::read_pod<std::uint32_t>(in) != kVersion) {
    throw std::runtime_error("classifier: unsupported version");
  }
  NgramStyleClassifier clf(config_from_json(nlohmann::json::parse(binio::read_string(in))));
  if (binio::read_pod<std::uint32_t>(in) != static_cast<std::uint32_t>(clf.config_.dim)) {
    throw std::runtime_error("classifier: dimension mismatch");
  }
  binio::read_floats(in, clf.output_);
  const auto n = binio::read_pod<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto id = binio::read_pod<std::uint32_t>(in);
    std::vector<float> r(clf.config_.dim);
    binio::read_floats(in, r);
    clf.rows_.emplace(id, std::move(r));
  }
  return clf;
}

void NgramStyleClassifier::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_bytes();
}

NgramStyleClassifier NgramStyleClassifier::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_bytes(buf.str());
}

ClassifierAccuracy evaluate_classifier(const NgramStyleClassifier& clf,
                                       const std::vector<Sentence>& sentences) {
  ClassifierAccuracy acc;
  std::array<int, kNumStyles> correct{};
  int total_correct = 0;
  for (const Sentence& s : sentences) {
    const int y = style_index(s.style);
    ++acc.counts[y];
    if (clf.predict(s) == s.style) {
      ++correct[y];
      ++total_correct;
    }
  }
  for (int k = 0; k < kNumStyles; ++k) {
    acc.per_style[k] = acc.counts[k] ? static_cast<double>(correct[k]) / acc.counts[k] : 0.0;
  }
  acc.overall = sentences.empty() ? 0.0 : static_cast<double>(total_correct) / sentences.size();
  return acc;
}

}  // namespace styleeq
