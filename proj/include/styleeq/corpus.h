#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "styleeq/style.h"

namespace styleeq {

// Constituency-parse counts supplied by an external parser.
struct ParseCounts {
  int s = 0;
  int sbar = 0;
  int advp = 0;
  int frag = 0;

  bool operator==(const ParseCounts&) const = default;
};

struct Sentence {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<std::string> fine_pos;
  std::vector<std::string> coarse_pos;
  std::optional<ParseCounts> parse_counts;
  Style style = Style::SciFi;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

// Throws CorpusError when the parallel sequences disagree in length, are
// empty, or carry a fine tag outside the known inventory / a coarse tag that
// is not its fine tag's image.
void validate_sentence(const Sentence& s);

enum class Split { Train = 0, Dev = 1, Test = 2 };
std::string_view split_name(Split s);
std::optional<Split> parse_split(std::string_view name);

struct Corpus {
  std::vector<Sentence> train;
  std::vector<Sentence> dev;
  std::vector<Sentence> test;
  std::string source;
  int format_version = 1;

  const std::vector<Sentence>& split(Split s) const;
  std::vector<Sentence>& split(Split s);
};

enum class CorpusFormat { AnnotatedJsonl, PlainText };
std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// `path` is either a single file (records carry a "split" field, default
// train) or a directory holding train/dev/test files (.jsonl or .txt).
//
// Plain-text lines are "style<TAB>text" or "split<TAB>style<TAB>text"; the
// text is run through annotate_fallback.
Corpus load_corpus(const std::string& path, CorpusFormat format);

// Parses one annotated-jsonl record. `fallback_id` is used when the record
// has no "id" field. Returns the split named by the record, if any.
Sentence parse_record(const std::string& line, const std::string& fallback_id,
                      std::optional<Split>* split = nullptr);
std::string to_record(const Sentence& s, std::optional<Split> split = std::nullopt);

// Writes every split into one jsonl stream with explicit "split" fields.
void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::string& path);

// Downsamples each style to the smallest style count. Order within the
// result follows a seeded shuffle.
std::vector<Sentence> balance_classes(const std::vector<Sentence>& sentences,
                                      std::uint64_t seed);

// Seeded sample of up to `per_style` sentences of each style, style-major.
std::vector<Sentence> sample_per_style(const std::vector<Sentence>& sentences,
                                       int per_style, std::uint64_t seed);

}  // namespace styleeq
