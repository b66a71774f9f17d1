#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.h"
#include "styleeq/stylometry.h"
#include "synthetic.h"

using namespace styleeq;
using testing::with_coarse;

namespace {

double sum(const StyleDistribution& p) { return p[0] + p[1] + p[2]; }

ClassifierConfig quick(AblationMode mode) {
  ClassifierConfig c;
  c.mode = mode;
  c.dim = 16;
  c.bucket_bits = 16;
  c.epochs = 5;
  return c;
}

}  // namespace

TEST_SUITE("stylometry") {

TEST_CASE("ablation examples") {
  const Sentence s = with_coarse({"Dracula", "slept", "alone"}, {"PROPN", "VERB", "ADV"});
  CHECK(ablate(s, AblationMode::AblatedNVA) == std::vector<std::string>{"PROPN", "VERB", "alone"});
  CHECK(ablate(s, AblationMode::ContentOnly) == std::vector<std::string>{"slept"});
  CHECK(ablate(s, AblationMode::ContentOnly, true) ==
        std::vector<std::string>{"Dracula", "slept"});
  CHECK(ablate(s, AblationMode::All) == std::vector<std::string>{"PROPN", "slept", "alone"});

  const Sentence t = with_coarse({"old", "ships", "sank", "there"}, {"ADJ", "NOUN", "VERB", "ADV"});
  CHECK(ablate(t, AblationMode::AblatedN) ==
        std::vector<std::string>{"old", "NOUN", "sank", "there"});
  CHECK(ablate(t, AblationMode::AblatedNV) ==
        std::vector<std::string>{"old", "NOUN", "VERB", "there"});
  CHECK(ablate(t, AblationMode::AblatedNVA) ==
        std::vector<std::string>{"ADJ", "NOUN", "VERB", "there"});

  const Sentence f = with_coarse({"of", "the", "."}, {"ADP", "DET", "PUNCT"});
  CHECK(ablate(f, AblationMode::AblatedNVA) == f.tokens);
}

TEST_CASE("ablation mode names") {
  for (AblationMode m : kAllAblations) CHECK(parse_ablation(ablation_name(m)) == m);
  CHECK_FALSE(parse_ablation("nouns").has_value());
}

TEST_CASE("separable synthetic corpus is learned by the ablated classifier") {
  const auto train = synthetic::make_corpus(200, 1, "tr");
  const auto held = synthetic::make_corpus(100, 2, "ho");
  ClassifierConfig cfg;
  cfg.mode = AblationMode::AblatedNVA;
  cfg.epochs = 20;
  const auto clf = NgramStyleClassifier::train(train, cfg);
  const auto acc = evaluate_classifier(clf, held);
  CHECK(acc.overall >= 0.95);
  for (const auto& s : held) {
    CHECK(std::abs(sum(clf.classify(s)) - 1.0) < 1e-9);
  }
}

TEST_CASE("single sentence per style memorizes") {
  std::vector<Sentence> tiny = {
      with_coarse({"thus", "ship", "."}, {"ADV", "NOUN", "PUNCT"}, Style::SciFi, "a"),
      with_coarse({"indeed", "truth", "."}, {"ADV", "NOUN", "PUNCT"}, Style::Philosophy, "b"),
      with_coarse({"alas", "crypt", "."}, {"ADV", "NOUN", "PUNCT"}, Style::Gothic, "c")};
  ClassifierConfig cfg = quick(AblationMode::All);
  cfg.epochs = 30;
  const auto clf = NgramStyleClassifier::train(tiny, cfg);
  CHECK(evaluate_classifier(clf, tiny).overall == 1.0);
}

TEST_CASE("training balances classes and rejects a missing style") {
  auto data = synthetic::make_corpus(10, 3, "x");
  for (int i = 0; i < 7; ++i) {
    data.push_back(synthetic::make_corpus(1, 100 + i, "extra" + std::to_string(i))[0]);
  }
  ClassifierTrainStats stats;
  NgramStyleClassifier::train(data, quick(AblationMode::All), &stats);
  CHECK(stats.per_class == std::array<int, kNumStyles>{10, 10, 10});

  std::vector<Sentence> two;
  for (const auto& s : data) {
    if (s.style != Style::Gothic) two.push_back(s);
  }
  CHECK_THROWS(NgramStyleClassifier::train(two, quick(AblationMode::All)));
}

TEST_CASE("ablation invariance and the empty prior") {
  const auto train = synthetic::make_corpus(50, 4, "t");
  const auto clf = NgramStyleClassifier::train(train, quick(AblationMode::AblatedNVA));
  const Sentence a = with_coarse({"thus", "door", "opened", "."}, {"ADV", "NOUN", "VERB", "PUNCT"});
  const Sentence b = with_coarse({"thus", "tower", "held", "."}, {"ADV", "NOUN", "VERB", "PUNCT"});
  CHECK(clf.classify(a) == clf.classify(b));
  const Sentence c = with_coarse({"alas", "door", "opened", "."}, {"ADV", "NOUN", "VERB", "PUNCT"});
  CHECK(clf.classify(a) != clf.classify(c));
  const auto prior = clf.classify_ablated({});
  CHECK(std::abs(sum(prior) - 1.0) < 1e-9);
}

TEST_CASE("features respect n-gram order") {
  const auto clf = NgramStyleClassifier::train(synthetic::make_corpus(5, 5, "t"),
                                               quick(AblationMode::All));
  const std::vector<std::string> x = {"a", "b", "c"};
  const std::vector<std::string> y = {"c", "b", "a"};
  // 3 unigrams + 2 bigrams + 1 trigram
  CHECK(clf.features(x).size() == 6);
  auto fx = clf.features(x);
  auto fy = clf.features(y);
  std::vector<std::uint32_t> unigrams;
  for (const auto& t : x) unigrams.push_back(clf.features({t})[0]);
  for (std::uint32_t u : unigrams) {
    CHECK(std::count(fx.begin(), fx.end(), u) >= 1);
    CHECK(std::count(fy.begin(), fy.end(), u) >= 1);
  }
  std::sort(fx.begin(), fx.end());
  std::sort(fy.begin(), fy.end());
  CHECK(fx != fy);
}

TEST_CASE("training is deterministic and serialization round-trips") {
  testing::TempDir dir("clf");
  const auto train = synthetic::make_corpus(40, 6, "t");
  const auto a = NgramStyleClassifier::train(train, quick(AblationMode::AblatedNV));
  const auto b = NgramStyleClassifier::train(train, quick(AblationMode::AblatedNV));
  CHECK(a.to_bytes() == b.to_bytes());
  a.save(dir.file("c.bin"));
  const auto back = NgramStyleClassifier::load(dir.file("c.bin"));
  CHECK(back.to_bytes() == a.to_bytes());
  CHECK(back.config().mode == AblationMode::AblatedNV);
  for (const auto& s : train) CHECK(back.classify(s) == a.classify(s));
  CHECK(a.touched_rows() > 0);

  std::string bad = a.to_bytes();
  bad.resize(bad.size() / 2);
  CHECK_THROWS(NgramStyleClassifier::from_bytes(bad));
}

}  // TEST_SUITE
