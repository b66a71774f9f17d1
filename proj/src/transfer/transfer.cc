#include "styleeq/transfer.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "styleeq/seq2seq/beam.h"

namespace styleeq {

PosProfile PosProfile::of(const Sentence& s) {
  PosProfile p;
  p.length = static_cast<int>(s.size());
  for (const auto& c : s.coarse_pos) {
    if (c == "PROPN") ++p.propn;
    else if (c == "NOUN") ++p.noun;
    else if (c == "VERB") ++p.verb;
    else if (c == "ADJ") ++p.adj;
  }
  return p;
}

bool sibling_matches(const PosProfile& ref, const PosProfile& cand, int level) {
  if (level < 0) throw std::invalid_argument("negative relaxation level");
  const int slack = std::max(0, level - kLengthOnlyLevel);
  if (std::abs(ref.length - cand.length) > slack) return false;
  if (level < 1 && ref.adj != cand.adj) return false;
  if (level < 2 && ref.propn != cand.propn) return false;
  if (level < 3 && ref.verb != cand.verb) return false;
  if (level < 4 && ref.noun != cand.noun) return false;
  return true;
}

std::uint64_t sibling_seed(std::uint64_t seed, std::string_view reference_id, Style target) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : reference_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= static_cast<std::uint64_t>(style_index(target)) + 1;
  h *= 0x100000001b3ULL;
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL + h;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SiblingResult find_siblings(const SiblingQuery& q, const std::vector<Sentence>& pool,
                            const WordListSet& wordlists, std::uint64_t seed) {
  if (!q.reference) throw std::invalid_argument("sibling query without reference");
  if (q.n < 1) throw std::invalid_argument("sibling sample size must be >= 1");
  const PosProfile ref = PosProfile::of(*q.reference);

  std::vector<std::size_t> candidates;
  std::vector<PosProfile> profiles;
  int max_gap = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].style != q.target) continue;
    candidates.push_back(i);
    profiles.push_back(PosProfile::of(pool[i]));
    max_gap = std::max(max_gap, std::abs(profiles.back().length - ref.length));
  }
  if (candidates.empty()) {
    throw NoSiblings("no " + std::string(style_name(q.target)) + " sentences in the sibling pool");
  }

  std::mt19937_64 rng(seed);
  std::vector<bool> taken(candidates.size(), false);
  std::vector<std::pair<std::size_t, int>> chosen;  // (candidate index, level)
  SiblingResult result;
  const int last_level = kLengthOnlyLevel + max_gap;
  for (int level = 0; level <= last_level && static_cast<int>(chosen.size()) < q.n; ++level) {
    std::vector<std::size_t> fresh;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!taken[k] && sibling_matches(ref, profiles[k], level)) fresh.push_back(k);
    }
    if (fresh.empty()) continue;
    const std::size_t need = static_cast<std::size_t>(q.n) - chosen.size();
    if (fresh.size() > need) {
      std::shuffle(fresh.begin(), fresh.end(), rng);
      fresh.resize(need);
      std::sort(fresh.begin(), fresh.end());
    }
    for (std::size_t k : fresh) {
      taken[k] = true;
      chosen.emplace_back(k, level);
    }
    result.relaxation_level = level;
  }
  std::sort(chosen.begin(), chosen.end());
  for (auto [k, level] : chosen) {
    const Sentence& s = pool[candidates[k]];
    result.siblings.push_back({&s, extract_controls(s, wordlists), level});
  }
  return result;
}

std::string TransferCandidate::to_json() const {
  nlohmann::ordered_json j;
  j["reference_id"] = reference_id;
  j["source_style"] = style_name(source);
  j["target_style"] = style_name(target);
  j["sibling_id"] = sibling_id;
  nlohmann::ordered_json controls_json = nlohmann::ordered_json::object();
  for (Control c : all_controls()) controls_json[std::string(control_name(c))] = controls[c];
  j["controls"] = controls_json;
  j["tokens"] = tokens;
  j["score"] = score;
  j["classifier_prob"] = classifier_prob ? nlohmann::ordered_json(*classifier_prob)
                                         : nlohmann::ordered_json(nullptr);
  j["relaxation_level"] = relaxation_level;
  return j.dump();
}

TransferCandidate TransferCandidate::from_json(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    TransferCandidate c;
    c.reference_id = j.at("reference_id").get<std::string>();
    const auto src = parse_style(j.at("source_style").get<std::string>());
    const auto tgt = parse_style(j.at("target_style").get<std::string>());
    if (!src || !tgt) throw std::invalid_argument("unknown style");
    c.source = *src;
    c.target = *tgt;
    c.sibling_id = j.at("sibling_id").get<std::string>();
    for (const auto& [name, count] : j.at("controls").items()) {
      const auto k = parse_control(name);
      if (!k) throw std::invalid_argument("unknown control " + name);
      c.controls[*k] = count.get<int>();
    }
    c.tokens = j.at("tokens").get<std::vector<std::string>>();
    c.score = j.at("score").get<double>();
    if (!j.at("classifier_prob").is_null()) c.classifier_prob = j.at("classifier_prob").get<double>();
    c.relaxation_level = j.at("relaxation_level").get<int>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad candidate record: ") + e.what());
  }
}

namespace {

void sort_by_score(std::vector<TransferCandidate>& cands) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const TransferCandidate& a, const TransferCandidate& b) {
                     return a.score > b.score;
                   });
}

}  // namespace

std::vector<TransferCandidate> transfer(const Seq2Seq<float>& model, const Vocabulary& vocab,
                                        const WordListSet& wordlists, const Sentence& ref,
                                        Style target, const std::vector<Sentence>& pool, int n,
                                        const DecodeSettings& decode, std::uint64_t seed) {
  if (model.config().kind != ModelKind::StyleEQ) {
    throw std::invalid_argument("transfer requires a StyleEQ model");
  }
  const SiblingResult sib =
      find_siblings({&ref, target, n}, pool, wordlists, sibling_seed(seed, ref.id, target));
  const EncoderInput input = encode_content(vocab, strip_control_words(ref, wordlists));
  std::vector<TransferCandidate> out;
  for (const Sibling& s : sib.siblings) {
    StyleSpec style{s.controls, target};
    const Hypothesis h = decode_best(model, input, style, decode.beam, decode.max_len);
    TransferCandidate c;
    c.reference_id = ref.id;
    c.source = ref.style;
    c.target = target;
    c.sibling_id = s.sentence->id;
    c.controls = s.controls;
    c.tokens = token_strings(vocab, h.tokens);
    c.score = h.score;
    c.relaxation_level = s.level;
    out.push_back(std::move(c));
  }
  sort_by_score(out);
  return out;
}

std::vector<TransferCandidate> baseline_transfer(const Seq2Seq<float>& model,
                                                 const Vocabulary& vocab,
                                                 const WordListSet& wordlists,
                                                 const Sentence& ref, Style target,
                                                 const DecodeSettings& decode) {
  if (model.config().kind != ModelKind::Genre) {
    throw std::invalid_argument("baseline_transfer requires a genre model");
  }
  const EncoderInput input = encode_content(vocab, strip_control_words(ref, wordlists));
  StyleSpec style;
  style.genre = target;
  std::vector<TransferCandidate> out;
  for (const Hypothesis& h : beam_decode(model, input, style, decode.beam, decode.max_len)) {
    TransferCandidate c;
    c.reference_id = ref.id;
    c.source = ref.style;
    c.target = target;
    c.tokens = token_strings(vocab, h.tokens);
    c.controls = extract_controls(c.tokens, wordlists);
    c.score = h.score;
    out.push_back(std::move(c));
  }
  sort_by_score(out);
  return out;
}

std::string_view selection_name(Selection s) {
  switch (s) {
    case Selection::All:
      return "all";
    case Selection::Top:
      return "top";
    case Selection::Oracle:
      return "oracle";
  }
  return "?";
}

std::optional<Selection> parse_selection(std::string_view name) {
  if (name == "all") return Selection::All;
  if (name == "top") return Selection::Top;
  if (name == "oracle") return Selection::Oracle;
  return std::nullopt;
}

StyleDistribution classify_output(const NgramStyleClassifier& clf, const OutputTagger& tagger,
                                  const std::vector<std::string>& tokens) {
  if (tokens.empty()) return clf.classify_ablated({});
  return clf.classify(tagger.tag(tokens));
}

void score_candidates(std::vector<TransferCandidate>& cands, const NgramStyleClassifier& clf,
                      const OutputTagger& tagger) {
  for (auto& c : cands) c.classifier_prob = classify_output(clf, tagger, c.tokens)[style_index(c.target)];
}

std::vector<TransferCandidate> select(const std::vector<TransferCandidate>& cands,
                                      Selection method) {
  if (cands.empty()) throw std::invalid_argument("select: empty candidate list");
  if (method == Selection::All) return cands;
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (method == Selection::Top) {
      if (cands[i].score > cands[best].score) best = i;
    } else {
      if (!cands[i].classifier_prob || !cands[best].classifier_prob) {
        throw std::invalid_argument("oracle selection needs classifier probabilities");
      }
      if (*cands[i].classifier_prob > *cands[best].classifier_prob) best = i;
    }
  }
  if (method == Selection::Oracle && !cands[best].classifier_prob) {
    throw std::invalid_argument("oracle selection needs classifier probabilities");
  }
  return {cands[best]};
}

namespace {

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

void export_annotation(std::vector<AnnotationItem> items, std::uint64_t seed,
                       const std::string& csv_path, const std::string& key_path) {
  std::mt19937_64 rng(seed);
  std::shuffle(items.begin(), items.end(), rng);
  std::ofstream csv(csv_path, std::ios::binary);
  std::ofstream key(key_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  if (!key) throw std::runtime_error("cannot write " + key_path);
  csv << "item_id,target_style,text\n";
  key << "item_id,reference_id,model,source_style,target_style,sibling_id\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& c = items[i].candidate;
    const std::string id = "item-" + std::to_string(i + 1);
    csv << id << ',' << style_name(c.target) << ',' << csv_field(join_tokens(c.tokens)) << '\n';
    key << id << ',' << csv_field(c.reference_id) << ',' << csv_field(items[i].model) << ','
        << style_name(c.source) << ',' << style_name(c.target) << ',' << csv_field(c.sibling_id)
        << '\n';
  }
}

}  // namespace styleeq
