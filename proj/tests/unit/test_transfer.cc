#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.h"
#include "json.hpp"
#include "styleeq/seq2seq/beam.h"
#include "styleeq/transfer.h"
#include "styleeq/vocabulary.h"
#include "synthetic.h"

using namespace styleeq;
using testing::with_coarse;

namespace {

// Reference profile: length 5, one each of PROPN, NOUN, VERB, ADJ.
Sentence reference() {
  return with_coarse({"Mina", "door", "opened", "cold", "."},
                     {"PROPN", "NOUN", "VERB", "ADJ", "PUNCT"}, Style::SciFi, "ref");
}

struct Pool {
  std::vector<Sentence> sentences;
  std::set<std::string> strict;
  std::set<std::string> level1;
};

// 100 gothic sentences: 10 exact matches, 20 that differ only in adjectives,
// 70 that match on length alone; plus sentences of other styles.
Pool make_pool() {
  Pool p;
  for (int i = 0; i < 10; ++i) {
    p.sentences.push_back(with_coarse({"Jonathan", "crypt", "and", "pale", "."},
                                      {"PROPN", "NOUN", "CCONJ", "ADJ", "PUNCT"}, Style::Gothic,
                                      "x" + std::to_string(i)));
    p.sentences.back().tokens[2] = "wept";
    p.sentences.back().coarse_pos[2] = "VERB";
    p.sentences.back().fine_pos[2] = "VBD";
    p.strict.insert(p.sentences.back().id);
  }
  for (int i = 0; i < 20; ++i) {
    p.sentences.push_back(with_coarse({"Lucy", "tomb", "wept", "softly", "."},
                                      {"PROPN", "NOUN", "VERB", "ADV", "PUNCT"}, Style::Gothic,
                                      "a" + std::to_string(i)));
    p.level1.insert(p.sentences.back().id);
  }
  for (int i = 0; i < 70; ++i) {
    p.sentences.push_back(with_coarse({"the", "tomb", "and", "the", "grave"},
                                      {"DET", "NOUN", "CCONJ", "DET", "NOUN"}, Style::Gothic,
                                      "l" + std::to_string(i)));
  }
  for (int i = 0; i < 15; ++i) {
    p.sentences.push_back(with_coarse({"Mina", "door", "opened", "cold", "."},
                                      {"PROPN", "NOUN", "VERB", "ADJ", "PUNCT"}, Style::SciFi,
                                      "s" + std::to_string(i)));
  }
  return p;
}

TransferCandidate cand(double score, std::optional<double> prob) {
  TransferCandidate c;
  c.score = score;
  c.classifier_prob = prob;
  return c;
}

struct TinyModel {
  Corpus corpus;
  Vocabulary vocab;
  std::unique_ptr<Seq2Seq<float>> model;
};

TinyModel tiny_model(ModelKind kind) {
  TinyModel t;
  const std::vector<std::vector<std::string>> texts = {
      {"the", "ship", "crossed", "the", "nebula", "."},
      {"and", "we", "never", "scanned", "a", "moon", ",", "quickly", "."},
      {"yet", "reason", "denied", "the", "truth", ";", "merely", "."},
      {"she", "haunted", "that", "crypt", "--", "alone", "."},
      {"but", "the", "ghost", "never", "entered", "the", "chapel", "."},
      {"so", "the", "mind", "defined", "that", "law", "."}};
  const std::vector<Style> styles = {Style::SciFi,  Style::SciFi,  Style::Philosophy,
                                     Style::Gothic, Style::Gothic, Style::Philosophy};
  for (std::size_t i = 0; i < texts.size(); ++i) {
    t.corpus.train.push_back(testing::tagged(texts[i], styles[i], "p" + std::to_string(i)));
  }
  t.vocab = build_vocab(t.corpus, 1);
  ModelConfig c;
  c.kind = kind;
  c.word_emb = 6;
  c.lemma_emb = 4;
  c.fine_emb = 4;
  c.coarse_emb = 3;
  c.hidden = 8;
  c.dec_emb = 6;
  c.ctrl_emb = 3;
  c.perceptron = 8;
  t.model = std::make_unique<Seq2Seq<float>>(c, VocabSizes::of(t.vocab));
  t.model->initialize(21);
  return t;
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("POS profile and the relaxation ladder") {
  const PosProfile r = PosProfile::of(reference());
  CHECK(r == PosProfile{5, 1, 1, 1, 1});
  const Sentence two_nouns = with_coarse({"a", "b", "c", "d", "e", "f", "g"},
                                         {"NOUN", "NOUN", "VERB", "DET", "DET", "DET", "PUNCT"});
  const Sentence one_noun = with_coarse({"a", "b", "c", "d", "e", "f", "g"},
                                        {"NOUN", "ADV", "VERB", "DET", "DET", "DET", "PUNCT"});
  CHECK_FALSE(sibling_matches(PosProfile::of(one_noun), PosProfile::of(two_nouns), 0));
  CHECK_FALSE(sibling_matches(PosProfile::of(one_noun), PosProfile::of(two_nouns), 3));
  CHECK(sibling_matches(PosProfile::of(one_noun), PosProfile::of(two_nouns), kLengthOnlyLevel));

  PosProfile longer = r;
  longer.length = 7;
  CHECK_FALSE(sibling_matches(r, longer, kLengthOnlyLevel + 1));
  CHECK(sibling_matches(r, longer, kLengthOnlyLevel + 2));
  PosProfile no_adj = r;
  no_adj.adj = 0;
  CHECK_FALSE(sibling_matches(r, no_adj, 0));
  CHECK(sibling_matches(r, no_adj, 1));
  PosProfile no_propn = no_adj;
  no_propn.propn = 0;
  CHECK_FALSE(sibling_matches(r, no_propn, 1));
  CHECK(sibling_matches(r, no_propn, 2));
}

TEST_CASE("pool of 100 with 10 exact matches yields 10 strict plus 6 relaxed") {
  const Pool p = make_pool();
  const Sentence ref = reference();
  SiblingQuery q{&ref, Style::Gothic, 16};
  const auto res = find_siblings(q, p.sentences, testing::wordlists(), 5);
  REQUIRE(res.siblings.size() == 16);
  CHECK(res.relaxation_level == 1);
  int strict = 0, relaxed = 0;
  std::set<std::string> ids;
  for (const auto& s : res.siblings) {
    ids.insert(s.sentence->id);
    CHECK(s.sentence->style == Style::Gothic);
    CHECK(s.controls == extract_controls(*s.sentence, testing::wordlists()));
    if (p.strict.count(s.sentence->id)) {
      ++strict;
      CHECK(s.level == 0);
      CHECK(PosProfile::of(*s.sentence) == PosProfile::of(ref));
    } else {
      ++relaxed;
      CHECK(p.level1.count(s.sentence->id) == 1);
      CHECK(s.level == 1);
    }
  }
  CHECK(strict == 10);
  CHECK(relaxed == 6);
  CHECK(ids.size() == 16);

  const auto again = find_siblings(q, p.sentences, testing::wordlists(), 5);
  for (std::size_t i = 0; i < 16; ++i) CHECK(again.siblings[i].sentence == res.siblings[i].sentence);
  // Selection order follows pool order.
  for (std::size_t i = 1; i < 16; ++i) CHECK(res.siblings[i - 1].sentence < res.siblings[i].sentence);

  const auto other = find_siblings(q, p.sentences, testing::wordlists(), 6);
  std::set<std::string> other_ids;
  for (const auto& s : other.siblings) other_ids.insert(s.sentence->id);
  CHECK(other_ids != ids);
}

TEST_CASE("strict-only requests, single matches and scarcity") {
  const Pool p = make_pool();
  const Sentence ref = reference();
  const auto eight = find_siblings({&ref, Style::Gothic, 8}, p.sentences, testing::wordlists(), 1);
  CHECK(eight.relaxation_level == 0);
  for (const auto& s : eight.siblings) CHECK(p.strict.count(s.sentence->id) == 1);

  std::vector<Sentence> one = {p.sentences[0]};
  const auto single = find_siblings({&ref, Style::Gothic, 1}, one, testing::wordlists(), 1);
  REQUIRE(single.siblings.size() == 1);
  CHECK(single.siblings[0].sentence == &one[0]);

  const auto all = find_siblings({&ref, Style::Gothic, 500}, p.sentences, testing::wordlists(), 1);
  CHECK(all.siblings.size() == 100);

  CHECK_THROWS_AS(find_siblings({&ref, Style::Philosophy, 4}, p.sentences, testing::wordlists(), 1),
                  NoSiblings);
}

TEST_CASE("select semantics") {
  const std::vector<TransferCandidate> one = {cand(-1.0, 0.3)};
  for (Selection s : kAllSelections) CHECK(select(one, s).size() == 1);

  std::vector<TransferCandidate> many;
  for (int i = 0; i < 16; ++i) many.push_back(cand(-0.1 * i, 0.05 * ((i * 7) % 16)));
  CHECK(select(many, Selection::All).size() == 16);
  const auto top = select(many, Selection::Top);
  REQUIRE(top.size() == 1);
  CHECK(top[0].score == doctest::Approx(0.0));
  const auto oracle = select(many, Selection::Oracle);
  REQUIRE(oracle.size() == 1);
  CHECK(*oracle[0].classifier_prob >= *top[0].classifier_prob);
  CHECK(*oracle[0].classifier_prob == doctest::Approx(0.75));

  std::vector<TransferCandidate> ties = {cand(-1.0, 0.5), cand(-1.0, 0.5)};
  ties[0].sibling_id = "first";
  ties[1].sibling_id = "second";
  CHECK(select(ties, Selection::Top)[0].sibling_id == "first");
  CHECK(select(ties, Selection::Oracle)[0].sibling_id == "first");

  CHECK_THROWS(select({}, Selection::Top));
  CHECK_THROWS(select({cand(0.0, std::nullopt)}, Selection::Oracle));
  for (Selection s : kAllSelections) CHECK(parse_selection(selection_name(s)) == s);
}

TEST_CASE("transfer produces one scored candidate per sibling") {
  TinyModel t = tiny_model(ModelKind::StyleEQ);
  const Sentence& ref = t.corpus.train[0];
  std::vector<Sentence> pool;
  const auto synthetic_pool = synthetic::make_corpus(30, 3, "g");
  for (const auto& s : synthetic_pool) {
    if (s.style == Style::Gothic) pool.push_back(s);
  }
  for (int i = 0; i < 5; ++i) {
    pool.push_back(testing::tagged({"she", "and", "he", "never", "opened", "the", "door", "."},
                                   Style::Gothic, "extra" + std::to_string(i)));
  }
  const DecodeSettings decode{8, 12};
  const auto cands = transfer(*t.model, t.vocab, testing::wordlists(), ref, Style::Gothic, pool,
                              16, decode, 7);
  REQUIRE(cands.size() == 16);
  std::set<std::string> siblings;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto& c = cands[i];
    CHECK(std::isfinite(c.score));
    CHECK(c.reference_id == ref.id);
    CHECK(c.source == Style::SciFi);
    CHECK(c.target == Style::Gothic);
    siblings.insert(c.sibling_id);
    const Sentence* sib = nullptr;
    for (const auto& s : pool) {
      if (s.id == c.sibling_id) sib = &s;
    }
    REQUIRE(sib != nullptr);
    CHECK(c.controls == extract_controls(*sib, testing::wordlists()));
    if (i > 0) CHECK(cands[i - 1].score >= c.score);
  }
  CHECK(siblings.size() == 16);

  const auto again = transfer(*t.model, t.vocab, testing::wordlists(), ref, Style::Gothic, pool,
                              16, decode, 7);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(again[i].tokens == cands[i].tokens);
    CHECK(again[i].sibling_id == cands[i].sibling_id);
  }

  const auto js = nlohmann::json::parse(cands[0].to_json());
  for (const char* key : {"reference_id", "target_style", "sibling_id", "controls", "tokens",
                          "score", "classifier_prob", "relaxation_level"}) {
    CHECK(js.contains(key));
  }
  CHECK(js["controls"].size() == 17);

  TinyModel g = tiny_model(ModelKind::Genre);
  CHECK_THROWS_AS(transfer(*g.model, g.vocab, testing::wordlists(), ref, Style::Gothic, pool, 16,
                           decode, 7),
                  std::invalid_argument);
}

TEST_CASE("transfer to the own style with the reference as sibling reconstructs") {
  TinyModel t = tiny_model(ModelKind::StyleEQ);
  const Sentence& ref = t.corpus.train[3];
  const std::vector<Sentence> pool = {ref};
  const DecodeSettings decode{4, 12};
  const auto cands =
      transfer(*t.model, t.vocab, testing::wordlists(), ref, ref.style, pool, 16, decode, 1);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].sibling_id == ref.id);
  CHECK(cands[0].controls == extract_controls(ref, testing::wordlists()));
  CHECK(cands[0].tokens == reconstruct(*t.model, t.vocab, testing::wordlists(), ref, 4, 12));
}

TEST_CASE("baseline transfer returns the whole beam") {
  TinyModel g = tiny_model(ModelKind::Genre);
  const Sentence& ref = g.corpus.train[1];
  const auto cands =
      baseline_transfer(*g.model, g.vocab, testing::wordlists(), ref, Style::Philosophy, {16, 12});
  CHECK(cands.size() <= 16);
  CHECK_FALSE(cands.empty());
  for (std::size_t i = 1; i < cands.size(); ++i) CHECK(cands[i - 1].score >= cands[i].score);
  for (const auto& c : cands) CHECK(c.sibling_id.empty());

  const auto own = baseline_transfer(*g.model, g.vocab, testing::wordlists(), ref, ref.style, {1, 12});
  REQUIRE(own.size() == 1);
  CHECK(own[0].tokens == reconstruct(*g.model, g.vocab, testing::wordlists(), ref, 1, 12));

  TinyModel s = tiny_model(ModelKind::StyleEQ);
  CHECK_THROWS_AS(
      baseline_transfer(*s.model, s.vocab, testing::wordlists(), ref, Style::Gothic, {16, 12}),
      std::invalid_argument);
}

TEST_CASE("annotation export is shuffled, blind and keyed") {
  testing::TempDir dir("annot");
  std::vector<AnnotationItem> items;
  for (int i = 0; i < 6; ++i) {
    TransferCandidate c;
    c.reference_id = "r" + std::to_string(i);
    c.source = Style::SciFi;
    c.target = Style::Gothic;
    c.sibling_id = i % 2 ? "sib" : "";
    c.tokens = {"the", "door", ",", "\"opened\"", "."};
    items.push_back({i % 2 ? "styleeq" : "baseline", c});
  }
  export_annotation(items, 3, dir.file("a.csv"), dir.file("k.csv"));
  std::ifstream csv(dir.file("a.csv")), key(dir.file("k.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "item_id,target_style,text");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.find("styleeq") == std::string::npos);
    CHECK(line.find("baseline") == std::string::npos);
  }
  CHECK(rows == 6);
  std::getline(key, line);
  CHECK(line == "item_id,reference_id,model,source_style,target_style,sibling_id");
  std::vector<std::string> order;
  while (std::getline(key, line)) order.push_back(line.substr(line.find(',') + 1, 2));
  CHECK(order.size() == 6);
  CHECK(order != std::vector<std::string>{"r0", "r1", "r2", "r3", "r4", "r5"});
}

}  // TEST_SUITE
