#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.h"
#include "styleeq/annotate.h"
#include "styleeq/corpus.h"
#include "styleeq/vocabulary.h"

using namespace styleeq;

namespace {

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string record(const std::string& style, const std::string& id,
                   const std::string& tokens, const std::string& lemmas,
                   const std::string& fine, const std::string& coarse,
                   const std::string& extra = "") {
  return "{\"id\":\"" + id + "\",\"style\":\"" + style + "\",\"tokens\":" + tokens +
         ",\"lemmas\":" + lemmas + ",\"fine_pos\":" + fine + ",\"coarse_pos\":" + coarse +
         extra + "}\n";
}

Corpus corpus_of(const std::vector<std::vector<std::string>>& train) {
  Corpus c;
  int i = 0;
  for (const auto& toks : train) c.train.push_back(testing::tagged(toks, Style::SciFi,
                                                                   "t" + std::to_string(i++)));
  return c;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("three-line annotated file yields one sentence per style") {
  testing::TempDir dir("corpus");
  const std::string path = dir.file("c.jsonl");
  write(path,
        record("scifi", "a", "[\"The\",\"ship\",\".\"]", "[\"the\",\"ship\",\".\"]",
               "[\"DT\",\"NN\",\".\"]", "[\"DET\",\"NOUN\",\"PUNCT\"]") +
            record("philosophy", "b", "[\"Reason\",\"rules\",\".\"]",
                   "[\"reason\",\"rule\",\".\"]", "[\"NN\",\"VBZ\",\".\"]",
                   "[\"NOUN\",\"VERB\",\"PUNCT\"]",
                   ",\"parse_counts\":{\"S\":1,\"SBAR\":0,\"ADVP\":0,\"FRAG\":0}") +
            record("gothic", "c", "[\"Night\",\"fell\",\".\"]", "[\"night\",\"fall\",\".\"]",
                   "[\"NN\",\"VBD\",\".\"]", "[\"NOUN\",\"VERB\",\"PUNCT\"]"));
  const Corpus c = load_corpus(path, CorpusFormat::AnnotatedJsonl);
  REQUIRE(c.train.size() == 3);
  CHECK(c.dev.empty());
  CHECK(c.test.empty());
  CHECK(c.train[0].style == Style::SciFi);
  CHECK(c.train[1].style == Style::Philosophy);
  CHECK(c.train[2].style == Style::Gothic);
  CHECK(c.train[1].parse_counts == ParseCounts{1, 0, 0, 0});
  CHECK_FALSE(c.train[0].parse_counts.has_value());
}

TEST_CASE("length mismatch names the line") {
  testing::TempDir dir("corpus");
  const std::string path = dir.file("bad.jsonl");
  write(path, record("scifi", "a", "[\"a\",\"b\"]", "[\"a\",\"b\"]", "[\"DT\",\"NN\"]",
                     "[\"DET\",\"NOUN\"]") +
                  record("scifi", "b", "[\"a\",\"b\",\"c\",\"d\",\"e\"]",
                         "[\"a\",\"b\",\"c\",\"d\"]", "[\"DT\",\"NN\",\"NN\",\"NN\",\"NN\"]",
                         "[\"DET\",\"NOUN\",\"NOUN\",\"NOUN\",\"NOUN\"]"));
  try {
    load_corpus(path, CorpusFormat::AnnotatedJsonl);
    FAIL("expected CorpusError");
  } catch (const CorpusError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("length mismatch") != std::string::npos);
  }
}

TEST_CASE("unknown style label and malformed JSON are rejected") {
  testing::TempDir dir("corpus");
  const std::string a = dir.file("a.jsonl");
  write(a, record("romance", "a", "[\"x\"]", "[\"x\"]", "[\"NN\"]", "[\"NOUN\"]"));
  CHECK_THROWS_WITH_AS(load_corpus(a, CorpusFormat::AnnotatedJsonl),
                       doctest::Contains("unknown style"), CorpusError);
  const std::string b = dir.file("b.jsonl");
  write(b, "{\"style\": \"scifi\", \"tokens\": [\n");
  CHECK_THROWS_AS(load_corpus(b, CorpusFormat::AnnotatedJsonl), CorpusError);
  CHECK_THROWS_AS(load_corpus(dir.file("missing.jsonl"), CorpusFormat::AnnotatedJsonl),
                  CorpusError);
}

TEST_CASE("plain text goes through the fallback annotator") {
  testing::TempDir dir("corpus");
  write(dir.file("train.txt"), "scifi\tThe ship fell.\n");
  write(dir.file("test.txt"), "gothic\tNight came .\n");
  const Corpus c = load_corpus(dir.path.string(), CorpusFormat::PlainText);
  REQUIRE(c.train.size() == 1);
  REQUIRE(c.test.size() == 1);
  const Sentence& s = c.train[0];
  CHECK(s.tokens == std::vector<std::string>{"The", "ship", "fell", "."});
  CHECK(s.fine_pos[0] == "DT");
  CHECK(s.coarse_pos.back() == "PUNCT");
  CHECK_FALSE(s.parse_counts.has_value());
  CHECK(s.id == "train-0");
  CHECK(c.test[0].id == "test-0");
}

TEST_CASE("fallback annotator tags") {
  const Sentence a = annotate_fallback("I am here .");
  CHECK(a.fine_pos == std::vector<std::string>{"PRP", "VBP", "RB", "."});
  CHECK(a.lemmas[1] == "be");
  const Sentence b = annotate_fallback("Dracula slept .");
  CHECK(b.fine_pos[0] == "NNP");
  CHECK(b.coarse_pos[0] == "PROPN");
  const Sentence c = annotate_fallback("Then Mina wept .");
  CHECK(c.fine_pos[1] == "NNP");
  CHECK_NOTHROW(validate_sentence(annotate_fallback("She didn't see John's ship, did she?")));
}

TEST_CASE("tokenizer splits punctuation and clitics") {
  CHECK(tokenize("don't stop.") == std::vector<std::string>{"do", "n't", "stop", "."});
  CHECK(tokenize("John's ship, gone!") ==
        std::vector<std::string>{"John", "'s", "ship", ",", "gone", "!"});
}

TEST_CASE("save and load round-trip is byte-identical") {
  testing::TempDir dir("corpus");
  Corpus c;
  c.train.push_back(testing::tagged({"The", "ship", "fell", "."}, Style::SciFi, "x1"));
  c.dev.push_back(testing::tagged({"Night", "came", "."}, Style::Gothic, "x2"));
  c.test.push_back(testing::tagged({"Reason", "rules", "."}, Style::Philosophy, "x3"));
  c.test.back().parse_counts = ParseCounts{1, 2, 0, 1};
  const std::string path = dir.file("c.jsonl");
  save_corpus(c, path);
  const Corpus back = load_corpus(path, CorpusFormat::AnnotatedJsonl);
  CHECK(back.train == c.train);
  CHECK(back.dev == c.dev);
  CHECK(back.test == c.test);
  std::ostringstream a, b;
  save_corpus(c, a);
  save_corpus(back, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("vocabulary threshold, ties and uniqueness") {
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({"the", "ship"});
  rows.push_back({"ship"});
  const Corpus c = corpus_of(rows);

  const Vocabulary v11 = build_vocab(c, 11);
  CHECK(v11.token.id("the") == IndexMap::kUnk);
  CHECK(v11.token.id("ship") != IndexMap::kUnk);

  const Vocabulary v1 = build_vocab(c, 1);
  CHECK(v1.token.size() == IndexMap::kNumReserved + 2);
  CHECK(v1.token.id("ship") != v1.token.id("the"));
  CHECK(v1.token.id("never-seen") == IndexMap::kUnk);

  std::vector<std::vector<std::string>> tie;
  for (int i = 0; i < 5; ++i) tie.push_back({"zeta", "alpha"});
  for (int i = 0; i < 6; ++i) tie.push_back({"omega"});
  const Vocabulary vt = build_vocab(corpus_of(tie), 1, 2);
  CHECK(vt.token.contains("omega"));
  CHECK(vt.token.contains("alpha"));
  CHECK_FALSE(vt.token.contains("zeta"));

  CHECK_THROWS(build_vocab(Corpus{}, 1));
}

TEST_CASE("vocabulary save/load keeps ids and hash") {
  testing::TempDir dir("vocab");
  const Corpus c = load_corpus(testing::data_path("toy"), CorpusFormat::PlainText);
  const Vocabulary v = build_vocab(c, 1);
  for (const IndexMap* m : {&v.token, &v.lemma, &v.fine_pos, &v.coarse_pos}) {
    CHECK(m->str(IndexMap::kPad) != m->str(IndexMap::kUnk));
    CHECK(m->size() > IndexMap::kNumReserved);
  }
  v.save(dir.file("v.json"));
  const Vocabulary back = Vocabulary::load(dir.file("v.json"));
  CHECK(back == v);
  CHECK(back.hash() == v.hash());
  CHECK(back.to_json() == v.to_json());
}

TEST_CASE("toy corpus shape") {
  const Corpus c = load_corpus(testing::data_path("toy"), CorpusFormat::PlainText);
  CHECK(c.train.size() == 150);
  for (Style st : kAllStyles) {
    int n = 0;
    for (const auto& s : c.train) n += s.style == st;
    CHECK(n == 50);
  }
  CHECK_FALSE(c.dev.empty());
  CHECK_FALSE(c.test.empty());
}

TEST_CASE("balance_classes and sample_per_style") {
  std::vector<Sentence> s;
  for (int i = 0; i < 7; ++i) s.push_back(testing::tagged({"a"}, Style::SciFi, "s" + std::to_string(i)));
  for (int i = 0; i < 3; ++i) s.push_back(testing::tagged({"b"}, Style::Gothic, "g" + std::to_string(i)));
  for (int i = 0; i < 5; ++i) s.push_back(testing::tagged({"c"}, Style::Philosophy, "p" + std::to_string(i)));
  const auto b = balance_classes(s, 4);
  std::array<int, kNumStyles> counts{};
  for (const auto& x : b) ++counts[style_index(x.style)];
  CHECK(counts == std::array<int, kNumStyles>{3, 3, 3});
  CHECK(balance_classes(s, 4) == b);

  const auto p = sample_per_style(s, 4, 9);
  std::array<int, kNumStyles> pc{};
  for (const auto& x : p) ++pc[style_index(x.style)];
  CHECK(pc == std::array<int, kNumStyles>{4, 4, 3});
}

}  // TEST_SUITE
