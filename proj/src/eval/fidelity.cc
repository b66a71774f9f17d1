#include <stdexcept>

#include "json.hpp"
#include "styleeq/eval.h"
#include "styleeq/seq2seq/beam.h"

namespace styleeq {
namespace {

int sign(int x) { return (x > 0) - (x < 0); }

bool atomic_change(const ControlVector& realized, const ControlVector& baseline, Control c) {
  if (realized[c] == baseline[c]) return false;
  for (Control k : word_list_controls()) {
    if (k == c || controls_nested(k, c)) continue;
    if (realized[k] != baseline[k]) return false;
  }
  return true;
}

}  // namespace

Generator model_generator(const Seq2Seq<float>& model, const Vocabulary& vocab,
                          const WordListSet& wordlists, int beam, int max_len) {
  return [&model, &vocab, &wordlists, beam, max_len](const Sentence& ref, const ControlVector& z) {
    const EncoderInput input = encode_content(vocab, strip_control_words(ref, wordlists));
    StyleSpec style{z, ref.style};
    return token_strings(vocab, decode_best(model, input, style, beam, max_len).tokens);
  };
}

std::string FidelityTrial::to_json() const {
  nlohmann::ordered_json j;
  j["sentence_id"] = sentence_id;
  j["control"] = control_name(control);
  j["delta"] = delta;
  j["original"] = original;
  j["target"] = target;
  j["realized"] = realized;
  j["baseline"] = baseline;
  j["exact"] = exact;
  j["direction"] = direction;
  j["atomic"] = atomic;
  return j.dump();
}

FidelityTrial FidelityTrial::from_json(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  FidelityTrial t;
  t.sentence_id = j.at("sentence_id").get<std::string>();
  auto c = parse_control(j.at("control").get<std::string>());
  if (!c) throw std::runtime_error("unknown control in trial log");
  t.control = *c;
  t.delta = j.at("delta").get<int>();
  t.original = j.at("original").get<int>();
  t.target = j.at("target").get<int>();
  t.realized = j.at("realized").get<int>();
  t.baseline = j.at("baseline").get<int>();
  t.exact = j.at("exact").get<bool>();
  t.direction = j.at("direction").get<bool>();
  t.atomic = j.at("atomic").get<bool>();
  return t;
}

FidelityReport aggregate_trials(const std::vector<FidelityTrial>& trials, int sentences,
                                const std::vector<int>& deltas) {
  FidelityReport r;
  r.sentences = sentences;
  r.deltas = deltas;
  r.trials = trials;
  for (Control c : all_controls()) {
    r.rows[control_index(c)].control = c;
    r.rows[control_index(c)].scored = !is_parse_control(c);
  }
  for (const auto& t : trials) {
    FidelityRow& row = r.rows[control_index(t.control)];
    ++row.trials;
    row.exact += t.exact;
    row.direction += t.direction;
    row.atomic += t.atomic;
  }
  return r;
}

FidelityReport control_fidelity(const std::vector<Sentence>& samples,
                                const WordListSet& wordlists, const Generator& generate,
                                const std::vector<int>& deltas) {
  std::vector<FidelityTrial> trials;
  for (const Sentence& s : samples) {
    const ControlVector z = extract_controls(s, wordlists);
    const ControlVector base = extract_controls(generate(s, z), wordlists);
    for (Control c : word_list_controls()) {
      for (int delta : deltas) {
        if (delta == 0) continue;
        const auto perturbed = perturb(z, c, delta);
        if (!perturbed) continue;
        const ControlVector realized = extract_controls(generate(s, *perturbed), wordlists);
        FidelityTrial t;
        t.sentence_id = s.id;
        t.control = c;
        t.delta = delta;
        t.original = z[c];
        t.target = (*perturbed)[c];
        t.realized = realized[c];
        t.baseline = base[c];
        t.exact = t.realized == t.target;
        t.direction = sign(t.realized - t.original) == sign(delta);
        t.atomic = atomic_change(realized, base, c);
        trials.push_back(std::move(t));
      }
    }
  }
  return aggregate_trials(trials, static_cast<int>(samples.size()), deltas);
}

}  // namespace styleeq
