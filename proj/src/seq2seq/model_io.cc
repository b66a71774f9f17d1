#include "styleeq/seq2seq/model_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "styleeq/binary_io.h"
#include "styleeq/hash.h"
#include "styleeq/nn/serialize.h"

namespace styleeq {
namespace {

constexpr char kModelMagic[9] = "STEQMDL1";
constexpr char kCheckpointMagic[9] = "STEQCKP1";

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

ModelHeader model_header(const Seq2Seq<float>& model, const std::string& vocab_hash,
                       const std::string& wordlist_hash) {
  ModelHeader h;
  h.config = model.config();
  h.sizes = model.vocab_sizes();
  h.vocab_hash = vocab_hash;
  h.wordlist_hash = wordlist_hash;
  if (h.config.kind == ModelKind::StyleEQ) {
    for (Control c : all_controls()) h.control_names.emplace_back(control_name(c));
  }
  return h;
}

std::string ModelHeader::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = format_version;
  j["config"] = nlohmann::ordered_json::parse(config.to_json());
  j["vocab_sizes"] = {{"token", sizes.token},
                      {"lemma", sizes.lemma},
                      {"fine", sizes.fine},
                      {"coarse", sizes.coarse}};
  j["vocab_hash"] = vocab_hash;
  j["wordlist_hash"] = wordlist_hash;
  j["controls"] = control_names;
  return j.dump();
}

ModelHeader ModelHeader::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ModelHeader h;
  h.format_version = j.at("format_version").get<int>();
  if (h.format_version != 1) {
    throw std::runtime_error("unsupported model format version " +
                             std::to_string(h.format_version));
  }
  h.config = ModelConfig::from_json(j.at("config").dump());
  const auto& vs = j.at("vocab_sizes");
  h.sizes = {vs.at("token").get<int>(), vs.at("lemma").get<int>(), vs.at("fine").get<int>(),
             vs.at("coarse").get<int>()};
  h.vocab_hash = j.at("vocab_hash").get<std::string>();
  h.wordlist_hash = j.at("wordlist_hash").get<std::string>();
  h.control_names = j.at("controls").get<std::vector<std::string>>();
  if (h.config.kind == ModelKind::StyleEQ) {
    if (h.control_names.size() != static_cast<std::size_t>(kNumControls)) {
      throw std::runtime_error("model header lists " + std::to_string(h.control_names.size()) +
                               " controls");
    }
    for (int i = 0; i < kNumControls; ++i) {
      if (h.control_names[i] != control_name(control_at(i))) {
        throw std::runtime_error("model header control order differs at " + h.control_names[i]);
      }
    }
  }
  return h;
}

std::string model_to_bytes(const Seq2Seq<float>& model, const std::string& vocab_hash,
                           const std::string& wordlist_hash) {
  std::ostringstream out(std::ios::binary);
  binio::write_magic(out, kModelMagic);
  binio::write_string(out, model_header(model, vocab_hash, wordlist_hash).to_json());
  nn::write_parameters(out, model.params());
  return out.str();
}

LoadedModel model_from_bytes(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  binio::expect_magic(in, kModelMagic);
  LoadedModel m;
  m.header = ModelHeader::from_json(binio::read_string(in, 1 << 20));
  m.model = std::make_unique<Seq2Seq<float>>(m.header.config, m.header.sizes);
  nn::read_parameters(in, m.model->params());
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("trailing bytes after model parameters");
  }
  return m;
}

void save_model(const std::string& path, const Seq2Seq<float>& model,
                const std::string& vocab_hash, const std::string& wordlist_hash) {
  write_file(path, model_to_bytes(model, vocab_hash, wordlist_hash));
}

LoadedModel load_model(const std::string& path) {
  try {
    return model_from_bytes(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void check_vocab(const ModelHeader& header, const Vocabulary& vocab) {
  if (header.vocab_hash != vocab.hash()) {
    throw ArtifactMismatch("vocabulary hash " + vocab.hash().substr(0, 12) +
                           " does not match the model's " + header.vocab_hash.substr(0, 12));
  }
  if (!(header.sizes == VocabSizes::of(vocab))) {
    throw ArtifactMismatch("vocabulary sizes do not match the model");
  }
}

void save_checkpoint(const std::string& path, const ModelHeader& header,
                     const nn::ParameterStore<float>& current,
                     const nn::ParameterStore<float>& best, const TrainState& state) {
  nlohmann::ordered_json j;
  j["epoch"] = state.epoch;
  j["best_epoch"] = state.best_epoch;
  j["best_bleu"] = state.best_bleu;
  j["stopped"] = state.stopped;
  j["log"] = nlohmann::ordered_json::array();
  for (const auto& e : state.log) j["log"].push_back(nlohmann::ordered_json::parse(e.to_json()));

  std::ostringstream out(std::ios::binary);
  binio::write_magic(out, kCheckpointMagic);
  binio::write_string(out, header.to_json());
  binio::write_string(out, j.dump());
  nn::write_parameters(out, current);
  nn::write_parameters(out, best);
  const std::string tmp = path + ".tmp";
  write_file(tmp, out.str());
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move checkpoint into place: " + path);
  }
}

ResumePoint load_checkpoint(const std::string& path, const ModelHeader& header,
                            const Seq2Seq<float>& architecture) {
  std::istringstream in(read_file(path), std::ios::binary);
  binio::expect_magic(in, kCheckpointMagic);
  const ModelHeader stored = ModelHeader::from_json(binio::read_string(in, 1 << 20));
  if (stored.to_json() != header.to_json()) {
    throw ArtifactMismatch(path + ": checkpoint was written for a different model setup");
  }
  const auto j = nlohmann::json::parse(binio::read_string(in, 1 << 26));
  ResumePoint r;
  r.state.epoch = j.at("epoch").get<int>();
  r.state.best_epoch = j.at("best_epoch").get<int>();
  r.state.best_bleu = j.at("best_bleu").get<double>();
  r.state.stopped = j.at("stopped").get<bool>();
  for (const auto& e : j.at("log")) r.state.log.push_back(EpochLog::from_json(e.dump()));
  r.current = architecture.params().cast<float>();
  r.best = architecture.params().cast<float>();
  nn::read_parameters(in, r.current);
  nn::read_parameters(in, r.best);
  return r;
}

}  // namespace styleeq
