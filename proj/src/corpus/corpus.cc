#include "styleeq/corpus.h"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "styleeq/annotate.h"

namespace styleeq {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> string_array(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw std::runtime_error(std::string("missing array field \"") + key + "\"");
  }
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw std::runtime_error(std::string("non-string entry in \"") + key + "\"");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

int count_field(const json& pc, const char* key) {
  auto it = pc.find(key);
  if (it == pc.end()) return 0;
  if (!it->is_number_integer() || it->get<int>() < 0) {
    throw std::runtime_error(std::string("parse_counts.") + key +
                             " must be a non-negative integer");
  }
  return it->get<int>();
}

// Coarse tags from external taggers are context dependent (e.g. AUX for "is");
// they are mapped back onto the fixed fine -> coarse table.
void canonicalize_coarse(Sentence& s) {
  for (std::size_t i = 0; i < s.fine_pos.size() && i < s.coarse_pos.size(); ++i) {
    if (auto coarse = fine_to_coarse(s.fine_pos[i])) s.coarse_pos[i] = *coarse;
  }
}

std::string sentence_id(Split split, std::size_t index) {
  return std::string(split_name(split)) + "-" + std::to_string(index);
}

Sentence parse_plain_line(const std::string& line, std::optional<Split>* split) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) fields.push_back(field);
  if (fields.size() < 2 || fields.size() > 3) {
    throw std::runtime_error("expected \"style<TAB>text\" or \"split<TAB>style<TAB>text\"");
  }
  std::size_t style_at = fields.size() - 2;
  if (fields.size() == 3) {
    auto sp = parse_split(fields[0]);
    if (!sp) throw std::runtime_error("unknown split \"" + fields[0] + "\"");
    if (split) *split = sp;
  }
  auto style = parse_style(fields[style_at]);
  if (!style) throw std::runtime_error("unknown style label \"" + fields[style_at] + "\"");
  const std::string& text = fields.back();
  if (text.find_first_not_of(" \t\r") == std::string::npos) {
    throw std::runtime_error("empty sentence text");
  }
  Sentence s = annotate_fallback(text);
  s.style = *style;
  return s;
}

void load_file(const fs::path& path, CorpusFormat format, std::optional<Split> default_split,
               Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw CorpusError(path.string(), 0, "cannot open file");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::optional<Split> split;
    Sentence s;
    try {
      if (format == CorpusFormat::AnnotatedJsonl) {
        s = parse_record(line, "", &split);
      } else {
        s = parse_plain_line(line, &split);
      }
      validate_sentence(s);
    } catch (const CorpusError&) {
      throw;
    } catch (const std::exception& e) {
      throw CorpusError(path.string(), lineno, e.what());
    }
    Split target = split.value_or(default_split.value_or(Split::Train));
    auto& bucket = corpus.split(target);
    if (s.id.empty()) s.id = sentence_id(target, bucket.size());
    bucket.push_back(std::move(s));
  }
}

}  // namespace

CorpusError::CorpusError(const std::string& path, std::size_t line, const std::string& what)
    : std::runtime_error(path + (line ? ":" + std::to_string(line) : std::string()) + ": " +
                         what),
      line_(line) {}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::Train:
      return "train";
    case Split::Dev:
      return "dev";
    case Split::Test:
      return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "dev" || name == "valid" || name == "validation") return Split::Dev;
  if (name == "test") return Split::Test;
  return std::nullopt;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "annotated-jsonl" || name == "jsonl") return CorpusFormat::AnnotatedJsonl;
  if (name == "plain-text" || name == "text") return CorpusFormat::PlainText;
  return std::nullopt;
}

const std::vector<Sentence>& Corpus::split(Split s) const {
  switch (s) {
    case Split::Train:
      return train;
    case Split::Dev:
      return dev;
    case Split::Test:
      return test;
  }
  return train;
}

std::vector<Sentence>& Corpus::split(Split s) {
  return const_cast<std::vector<Sentence>&>(std::as_const(*this).split(s));
}

void validate_sentence(const Sentence& s) {
  const std::size_t m = s.tokens.size();
  if (m == 0) throw std::runtime_error("sentence has no tokens");
  auto check = [&](const std::vector<std::string>& v, const char* name) {
    if (v.size() != m) {
      throw std::runtime_error("length mismatch: " + std::to_string(m) + " tokens but " +
                               std::to_string(v.size()) + " " + name);
    }
  };
  check(s.lemmas, "lemmas");
  check(s.fine_pos, "fine_pos");
  check(s.coarse_pos, "coarse_pos");
  for (std::size_t i = 0; i < m; ++i) {
    auto coarse = fine_to_coarse(s.fine_pos[i]);
    if (!coarse) throw std::runtime_error("unknown fine POS tag \"" + s.fine_pos[i] + "\"");
    if (*coarse != s.coarse_pos[i]) {
      throw std::runtime_error("coarse tag \"" + s.coarse_pos[i] + "\" is not the image of \"" +
                               s.fine_pos[i] + "\"");
    }
  }
}

Sentence parse_record(const std::string& line, const std::string& fallback_id,
                      std::optional<Split>* split) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed record: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("malformed record: not a JSON object");
  Sentence s;
  auto style = j.find("style");
  if (style == j.end() || !style->is_string()) {
    throw std::runtime_error("malformed record: missing \"style\"");
  }
  auto parsed = parse_style(style->get<std::string>());
  if (!parsed) {
    throw std::runtime_error("unknown style label \"" + style->get<std::string>() + "\"");
  }
  s.style = *parsed;
  s.tokens = string_array(j, "tokens");
  s.lemmas = string_array(j, "lemmas");
  s.fine_pos = string_array(j, "fine_pos");
  s.coarse_pos = string_array(j, "coarse_pos");
  if (auto pc = j.find("parse_counts"); pc != j.end() && !pc->is_null()) {
    if (!pc->is_object()) throw std::runtime_error("parse_counts must be an object");
    s.parse_counts = ParseCounts{count_field(*pc, "S"), count_field(*pc, "SBAR"),
                                 count_field(*pc, "ADVP"), count_field(*pc, "FRAG")};
  }
  if (auto id = j.find("id"); id != j.end() && id->is_string()) {
    s.id = id->get<std::string>();
  } else {
    s.id = fallback_id;
  }
  if (auto sp = j.find("split"); sp != j.end()) {
    auto parsed_split = sp->is_string() ? parse_split(sp->get<std::string>()) : std::nullopt;
    if (!parsed_split) throw std::runtime_error("unknown split value");
    if (split) *split = parsed_split;
  }
  canonicalize_coarse(s);
  return s;
}

std::string to_record(const Sentence& s, std::optional<Split> split) {
  json j;
  j["id"] = s.id;
  if (split) j["split"] = split_name(*split);
  j["style"] = style_name(s.style);
  j["tokens"] = s.tokens;
  j["lemmas"] = s.lemmas;
  j["fine_pos"] = s.fine_pos;
  j["coarse_pos"] = s.coarse_pos;
  if (s.parse_counts) {
    j["parse_counts"] = {{"S", s.parse_counts->s},
                         {"SBAR", s.parse_counts->sbar},
                         {"ADVP", s.parse_counts->advp},
                         {"FRAG", s.parse_counts->frag}};
  }
  return j.dump();
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
  Corpus corpus;
  corpus.source = path;
  fs::path p(path);
  if (!fs::exists(p)) throw CorpusError(path, 0, "no such file or directory");
  if (fs::is_directory(p)) {
    const char* ext = format == CorpusFormat::AnnotatedJsonl ? ".jsonl" : ".txt";
    bool any = false;
    for (Split sp : {Split::Train, Split::Dev, Split::Test}) {
      fs::path file = p / (std::string(split_name(sp)) + ext);
      if (fs::exists(file)) {
        load_file(file, format, sp, corpus);
        any = true;
      }
    }
    if (!any) throw CorpusError(path, 0, std::string("no train/dev/test") + ext + " files");
  } else {
    load_file(p, format, std::nullopt, corpus);
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, std::ostream& out) {
  for (Split sp : {Split::Train, Split::Dev, Split::Test}) {
    for (const Sentence& s : corpus.split(sp)) out << to_record(s, sp) << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_corpus(corpus, out);
}

std::vector<Sentence> balance_classes(const std::vector<Sentence>& sentences,
                                      std::uint64_t seed) {
  std::array<std::vector<std::size_t>, kNumStyles> by_style;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    by_style[style_index(sentences[i].style)].push_back(i);
  }
  std::size_t smallest = sentences.size();
  for (const auto& v : by_style) smallest = std::min(smallest, v.size());
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> keep;
  for (auto& v : by_style) {
    std::shuffle(v.begin(), v.end(), rng);
    keep.insert(keep.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(smallest));
  }
  std::shuffle(keep.begin(), keep.end(), rng);
  std::vector<Sentence> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(sentences[i]);
  return out;
}

std::vector<Sentence> sample_per_style(const std::vector<Sentence>& sentences, int per_style,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sentence> out;
  for (Style style : kAllStyles) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (sentences[i].style == style) idx.push_back(i);
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    if (idx.size() > static_cast<std::size_t>(per_style)) idx.resize(per_style);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) out.push_back(sentences[i]);
  }
  return out;
}

}  // namespace styleeq
