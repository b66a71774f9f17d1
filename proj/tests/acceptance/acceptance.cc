#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.h"
#include "json.hpp"
#include "perfect_generator.h"
#include "styleeq/eval.h"
#include "styleeq/hash.h"
#include "styleeq/nn/grad_check.h"
#include "styleeq/nn/layers.h"
#include "styleeq/seq2seq/beam.h"
#include "styleeq/seq2seq/model_io.h"
#include "styleeq/stylometry.h"
#include "styleeq/tagger.h"
#include "styleeq/transfer.h"
#include "synthetic.h"
#include "toy.h"

using namespace styleeq;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::map<int, std::string> lines;

// Progress goes to stderr as criteria finish; stdout gets the ordered list.
void report(int id, bool pass, const std::string& what, const std::string& measured) {
  const std::string line =
      "C" + std::to_string(id) + " " + (pass ? "PASS" : "FAIL") + " " + what + " | " + measured;
  std::fprintf(stderr, "%s\n", line.c_str());
  lines[id] = line;
  if (!pass) ++failures;
}

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int decimals = 4) { return format_fixed(v, decimals); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- C2

nn::Matrix<double> random_matrix(Eigen::Index r, Eigen::Index c, nn::Rng& rng, double scale) {
  nn::Matrix<double> m(r, c);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = scale * (2 * nn::uniform01(rng) - 1);
  return m;
}

void randomize(nn::ParameterStore<double>& store, nn::Rng& rng, double scale) {
  for (int id = 0; id < store.size(); ++id) {
    store.value(id) = random_matrix(store.value(id).rows(), store.value(id).cols(), rng, scale);
  }
}

double gru_check() {
  using namespace nn;
  ParameterStore<double> store;
  GruLayer g = GruLayer::create(store, "g", 4, 5);
  Rng rng(21);
  randomize(store, rng, 0.5);
  const int ix = store.add("x", 3, 6);
  const int ic = store.add("xc", 1, 1);
  const int ih = store.add("h0", 5, 1);
  store.value(ix) = random_matrix(3, 6, rng, 1.0);
  store.value(ic) = random_matrix(1, 1, rng, 1.0);
  store.value(ih) = random_matrix(5, 1, rng, 0.5);
  const Matrix<double> w = random_matrix(5, 6, rng, 1.0);
  const Vector<double> wl = random_matrix(5, 1, rng, 1.0).col(0);
  auto forward = [&](GruCache<double>& cache) {
    gru_forward<double>(store, g, store.value(ix), store.value(ic).col(0), store.value(ih).col(0),
                        cache);
    return Matrix<double>(cache.outputs()).cwiseProduct(w).sum() + cache.last().dot(wl);
  };
  GruCache<double> cache;
  forward(cache);
  GradientSet<double> grads = store.make_gradients();
  Matrix<double> dx;
  Vector<double> dxc, dh0;
  gru_backward<double>(store, g, cache, w, wl, grads, &dx, &dxc, &dh0);
  grads[ix] = dx;
  grads[ic].col(0) = dxc;
  grads[ih].col(0) = dh0;
  return grad_check(store, grads, [&] {
           GruCache<double> c;
           return forward(c);
         }).max_rel_error;
}

double attention_check() {
  using namespace nn;
  ParameterStore<double> store;
  AttentionLayer att = AttentionLayer::create(store, "a", 4, 3, 5);
  Rng rng(22);
  randomize(store, rng, 0.7);
  const int ic = store.add("c", 4, 6);
  const int iq = store.add("q", 3, 5);
  store.value(ic) = random_matrix(4, 6, rng, 1.0);
  store.value(iq) = random_matrix(3, 5, rng, 1.0);
  const Matrix<double> w = random_matrix(4, 5, rng, 1.0);
  auto forward = [&](AttentionCache<double>& cache) {
    return attention_forward<double>(store, att, store.value(ic), store.value(iq), cache)
        .cwiseProduct(w)
        .sum();
  };
  AttentionCache<double> cache;
  forward(cache);
  GradientSet<double> grads = store.make_gradients();
  Matrix<double> dc, dq;
  attention_backward<double>(store, att, cache, w, grads, dc, dq);
  grads[ic] = dc;
  grads[iq] = dq;
  return grad_check(store, grads, [&] {
           AttentionCache<double> c;
           return forward(c);
         }).max_rel_error;
}

double output_check() {
  using namespace nn;
  ParameterStore<double> store;
  OutputLayer out = OutputLayer::create(store, "o", 3, 4, 5, 6);
  Rng rng(23);
  randomize(store, rng, 0.6);
  const int ih = store.add("h", 3, 4);
  const int ic = store.add("c", 4, 4);
  store.value(ih) = random_matrix(3, 4, rng, 1.0);
  store.value(ic) = random_matrix(4, 4, rng, 1.0);
  const Matrix<double> mask = dropout_mask<double>(5, 4, 0.25, rng);
  const std::vector<int> targets = {1, 5, 2, 4};
  auto forward = [&](OutputCache<double>& cache, Matrix<double>* d_logits) {
    const Matrix<double> lp =
        output_forward<double>(store, out, store.value(ih), store.value(ic), &mask, cache);
    return nll_loss<double>(lp, targets, d_logits);
  };
  OutputCache<double> cache;
  Matrix<double> d_logits;
  forward(cache, &d_logits);
  GradientSet<double> grads = store.make_gradients();
  Matrix<double> dh, dc;
  output_backward<double>(store, out, cache, d_logits, grads, dh, dc);
  grads[ih] = dh;
  grads[ic] = dc;
  return grad_check(store, grads, [&] {
           OutputCache<double> c;
           return forward(c, nullptr);
         }).max_rel_error;
}

// One training step of the full model on three sentences, dropout on.
double full_step_check() {
  Corpus corpus;
  corpus.train = {
      testing::tagged({"The", "ship", "crossed", "the", "nebula", "."}, Style::SciFi, "a"),
      testing::tagged({"But", "reason", "never", "denied", "truth", ";", "clearly", "."},
                      Style::Philosophy, "b"),
      testing::tagged({"She", "haunted", "the", "crypt", "--", "alone", "."}, Style::Gothic, "c")};
  const Vocabulary vocab = build_vocab(corpus, 1);
  const auto examples = make_examples(vocab, testing::wordlists(), corpus.train);
  ModelConfig cfg;
  cfg.word_emb = 4;
  cfg.lemma_emb = 3;
  cfg.fine_emb = 3;
  cfg.coarse_emb = 2;
  cfg.hidden = 5;
  cfg.dec_emb = 4;
  cfg.ctrl_emb = 2;
  cfg.perceptron = 6;
  Seq2Seq<double> m(cfg, VocabSizes::of(vocab));
  nn::Rng init(31);
  randomize(m.params(), init, 0.4);
  const double scale = 1.0 / static_cast<double>(examples.size());
  auto total = [&](nn::GradientSet<double>* g) {
    double l = 0.0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      nn::Rng rng(200 + i);
      l += scale * m.loss(examples[i], g, scale, 0.25, &rng);
    }
    return l;
  };
  nn::GradientSet<double> grads = m.params().make_gradients();
  total(&grads);
  return nn::grad_check(m.params(), grads, [&] { return total(nullptr); }).max_rel_error;
}

// ---------------------------------------------------------------- C8

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Runs the CLI pipeline in `dir`; returns the first non-zero exit code.
int pipeline(const std::string& dir) {
  const std::string cli = std::string("'") + STYLEEQ_CLI + "'";
  const std::string common = " --corpus " + testing::data_path("toy") + " --wordlists " +
                             testing::data_path("wordlists.json");
  const std::string quiet = " >/dev/null 2>&1";
  std::ofstream(dir + "/in.txt") << "gothic\tThe ship fell into the dark sea and she wept .\n"
                                 << "scifi\tReason never denied the truth of the stars .\n";
  const std::vector<std::string> steps = {
      cli + " train" + common + " --out_dir " + dir + "/m --hidden 48 --dec_emb 48" +
          " --perceptron 48 --max_epochs 12 --validate_every 4 --checkpoint " + dir +
          "/m/ck.bin",
      cli + " train" + common + " --out_dir " + dir + "/b --model baseline --hidden 48" +
          " --dec_emb 48 --perceptron 48 --max_epochs 12 --validate_every 4",
      cli + " train-classifier --corpus " + testing::data_path("toy") + " --out " + dir +
          "/clf.bin --report " + dir + "/clf.tsv --epochs 20",
      cli + " transfer" + common + " --model_file " + dir + "/m/model.bin --vocab " + dir +
          "/m/vocab.json --input " + dir + "/in.txt --target philosophy --classifier " + dir +
          "/clf.bin --out " + dir + "/transfer.jsonl",
      cli + " evaluate" + common + " --model_file " + dir + "/m/model.bin --model_file " + dir +
          "/b/model.bin --vocab " + dir + "/m/vocab.json --classifier " + dir +
          "/clf.bin --out_dir " + dir + "/ev --per_genre 10 --deltas=-1,1" +
          " --references_per_genre 3",
  };
  for (const auto& s : steps) {
    const int code = shell(s + quiet);
    if (code != 0) return code;
  }
  return 0;
}

std::vector<std::string> artifacts(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out.push_back(std::filesystem::relative(e.path(), dir).string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- C10

struct RawLists {
  std::vector<std::pair<std::string, std::vector<std::string>>> lists;
};

RawLists raw_lists() {
  std::ifstream in(testing::data_path("wordlists.json"));
  const auto j = nlohmann::json::parse(in);
  RawLists r;
  for (const auto& [name, words] : j.at("lists").items()) {
    r.lists.emplace_back(name, words.get<std::vector<std::string>>());
  }
  return r;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

int main() {
  const auto& wl = testing::wordlists();

  // C2: gradient checks in double precision.
  {
    const auto t0 = Clock::now();
    const double gru = gru_check();
    const double att = attention_check();
    const double out = output_check();
    const double step = full_step_check();
    const double secs = since(t0);
    report(2, gru < 1e-4 && att < 1e-4 && out < 1e-4 && step < 1e-3 && secs < 120.0,
           "gradient checks: layers < 1e-4, full step < 1e-3, < 120 s",
           "gru " + sci(gru) + " attention " + sci(att) + " output " + sci(out) + " step " +
               sci(step) + " time " + fmt(secs, 1) + " s");
  }

  // C3: memorization of the toy corpus.
  std::unique_ptr<toy::Fixture> f;
  {
    f = toy::train_toy(STYLEEQ_DATA_DIR);
    int first = 0;
    for (const auto& e : f->state.log) {
      if (!first && e.bleu && *e.bleu >= 0.95) first = e.epoch;
    }
    report(3, f->state.best_bleu >= 0.95 && f->seconds < 600.0,
           "toy StyleEQ (hidden 128) train BLEU >= 0.95 within 300 epochs, < 600 s",
           "best BLEU " + fmt(f->state.best_bleu) + " at epoch " +
               std::to_string(f->state.best_epoch) + ", first >= 0.95 at epoch " +
               std::to_string(first) + ", " + fmt(f->seconds, 1) + " s");
  }

  // C4: control fidelity of the memorized model.
  {
    const auto t0 = Clock::now();
    const auto rep = control_fidelity(f->corpus.train, wl,
                                      model_generator(*f->model, f->vocab, wl, 8, 60), {-1, 1});
    const double secs = since(t0);
    bool pass = secs < 300.0;
    std::string measured;
    for (Control c : {Control::Conjunction, Control::Determiner, Control::Punctuation,
                      Control::Negation}) {
      const double d = rep.row(c).direction_pct();
      pass = pass && d >= 60.0;
      measured += std::string(control_name(c)) + " " + fmt(d, 2) + "% ";
    }
    int exact = 0, exact_dir = 0;
    for (const auto& t : rep.trials) {
      exact += t.exact;
      exact_dir += t.exact && t.direction;
    }
    pass = pass && exact == exact_dir;
    report(4, pass,
           "Direction >= 60% (conj, det, punct, neg; |delta| = 1), Exact => Direction always, "
           "< 300 s",
           measured + "exact=>direction " + std::to_string(exact_dir) + "/" +
               std::to_string(exact) + " time " + fmt(secs, 1) + " s");
  }

  // C5: a perfect generator.
  {
    const auto rep =
        control_fidelity(f->corpus.train, wl, perfect::make(wl), {-3, -2, -1, 1, 2, 3});
    bool pass = true;
    int trials = 0;
    for (Control c : word_list_controls()) {
      const auto& r = rep.row(c);
      trials += r.trials;
      pass = pass && r.trials > 0 && r.exact_pct() == 100.0 && r.direction_pct() == 100.0 &&
             r.atomic_pct() == 100.0;
    }
    report(5, pass, "perfect generator scores 100/100/100 on all 13 word-list controls",
           std::to_string(trials) + " trials over " + std::to_string(rep.sentences) +
               " sentences");
  }

  // C6: classifier separability on the synthetic corpus.
  {
    const auto train = synthetic::make_corpus(200, 61, "tr");
    const auto held = synthetic::make_corpus(300, 62, "ho");
    ClassifierConfig cfg;
    cfg.epochs = 20;
    cfg.mode = AblationMode::AblatedNVA;
    const double nva = evaluate_classifier(NgramStyleClassifier::train(train, cfg), held).overall;
    cfg.mode = AblationMode::ContentOnly;
    const double content =
        evaluate_classifier(NgramStyleClassifier::train(train, cfg), held).overall;
    ClassifierConfig defaults;
    defaults.mode = AblationMode::AblatedNVA;
    const double nva_default =
        evaluate_classifier(NgramStyleClassifier::train(train, defaults), held).overall;
    report(6, nva >= 0.95 && content <= 0.40,
           "synthetic 600 sentences: AblatedNVA held-out >= 0.95, ContentOnly <= 0.40 (20 epochs)",
           "AblatedNVA " + fmt(nva) + " ContentOnly " + fmt(content) +
               "; AblatedNVA at default 5 epochs " + fmt(nva_default));
  }

  // C7: oracle selection dominates top selection.
  {
    ClassifierConfig cfg;
    cfg.epochs = 20;
    const auto clf = NgramStyleClassifier::train(f->corpus.train, cfg);
    const OutputTagger tagger(f->corpus.train);
    const CandidateSource source = [&](const Sentence& ref, Style target) {
      return transfer(*f->model, f->vocab, wl, ref, target, f->corpus.train, 16,
                      DecodeSettings{}, 1);
    };
    const auto rep = transfer_accuracy("styleeq", f->corpus.test, source, clf, tagger);
    const double top = rep.table(Selection::Top).overall.accuracy();
    const double oracle = rep.table(Selection::Oracle).overall.accuracy();
    const double all = rep.table(Selection::All).overall.accuracy();
    report(7, rep.dominance_violations == 0 && rep.dominance_checks > 0,
           "oracle-selected target probability >= top-selected, 0 violations",
           std::to_string(rep.dominance_violations) + " violations in " +
               std::to_string(rep.dominance_checks) + " pairs; accuracy all " + fmt(all, 3) +
               " top " + fmt(top, 3) + " oracle " + fmt(oracle, 3));
  }

  // C8: reproducibility of the CLI pipeline.
  {
    testing::TempDir a("accept-a"), b("accept-b");
    const auto t0 = Clock::now();
    const int ca = pipeline(a.path.string());
    const int cb = pipeline(b.path.string());
    bool same = ca == 0 && cb == 0;
    const auto fa = artifacts(a.path.string());
    const auto fb = artifacts(b.path.string());
    same = same && fa == fb;
    int compared = 0;
    std::string differing;
    if (same) {
      for (const auto& rel : fa) {
        ++compared;
        if (sha256_file((a.path / rel).string()) != sha256_file((b.path / rel).string())) {
          same = false;
          differing += rel + " ";
        }
      }
    }
    report(8, same, "two CLI pipeline runs give byte-identical models and reports",
           "exit codes " + std::to_string(ca) + "/" + std::to_string(cb) + ", " +
               std::to_string(compared) + " files compared" +
               (differing.empty() ? "" : ", differ: " + differing) + ", " +
               fmt(since(t0), 1) + " s");
  }

  // C9: metric identities.
  {
    std::vector<TokenSeq> refs;
    for (const auto& s : f->corpus.train) refs.push_back(s.tokens);
    const double b = bleu(refs, refs);

    ModelConfig small;
    small.hidden = 8;
    small.dec_emb = 8;
    small.perceptron = 8;
    small.ctrl_emb = 4;
    Seq2Seq<double> uniform(small, VocabSizes::of(f->vocab));
    uniform.initialize(5);
    uniform.params().value(*uniform.params().find("dec.out.V")).setZero();
    uniform.params().value(*uniform.params().find("dec.out.v")).setZero();
    const auto pu = perplexity(uniform, f->train);
    const double vocab = static_cast<double>(f->vocab.token.size());
    const auto pm = perplexity(*f->model, f->train);
    const double id_err = std::max(std::abs(std::exp(pu.nll) - pu.perplexity) / pu.perplexity,
                                   std::abs(std::exp(pm.nll) - pm.perplexity) / pm.perplexity);
    report(9,
           b == 1.0 && std::abs(pu.perplexity - vocab) <= 1e-6 && id_err <= 1e-9,
           "BLEU(identity) = 1, uniform perplexity = |V| +- 1e-6, exp(NLL) = perplexity to 1e-9",
           "BLEU " + fmt(b, 6) + ", uniform " + fmt(pu.perplexity, 9) + " vs |V| " +
               fmt(vocab, 0) + ", identity error " + sci(id_err) + ", memorized ppl " +
               fmt(pm.perplexity, 4));
  }

  // C10: extraction against a brute-force recount.
  {
    const RawLists raw = raw_lists();
    std::vector<std::string> pool = {"ship", "castle", "reason", "crept", "dark", "stars", "."};
    for (const auto& [name, words] : raw.lists) pool.insert(pool.end(), words.begin(), words.end());
    std::mt19937_64 rng(1010);
    int mismatches = 0, residual = 0;
    for (int i = 0; i < 1000; ++i) {
      std::vector<std::string> toks;
      const int len = 1 + static_cast<int>(rng() % 25);
      for (int k = 0; k < len; ++k) {
        std::string t = pool[rng() % pool.size()];
        if (rng() % 4 == 0 && !t.empty()) t[0] = static_cast<char>(std::toupper(t[0]));
        if (rng() % 10 == 0) for (char& c : t) c = static_cast<char>(std::toupper(c));
        toks.push_back(t);
      }
      const Sentence s = testing::tagged(toks);
      const ControlVector z = extract_controls(s, wl);
      for (const auto& [name, words] : raw.lists) {
        int n = 0;
        for (const auto& t : toks) {
          n += std::find(words.begin(), words.end(), lower(t)) != words.end();
        }
        if (z[*parse_control(name)] != n) ++mismatches;
      }
      const ControlVector after = extract_controls(strip_control_words(s, wl).tokens, wl);
      for (Control c : word_list_controls()) residual += after[c] != 0;
    }
    report(10, mismatches == 0 && residual == 0,
           "1000 random sentences: extraction matches brute-force recount; strip leaves no "
           "word-list counts",
           std::to_string(mismatches) + " mismatches, " + std::to_string(residual) +
               " non-zero counts after strip");
  }

  // C1: paper-scale figures are informational only.
  {
    const auto examples = make_examples(f->vocab, wl, f->corpus.test);
    const auto ppl = perplexity(*f->model, examples);
    const double b = reconstruction_bleu(*f->model, f->vocab, examples, 8, 60);
    report(1, true,
           "large-corpus figures are reported, never asserted; toy held-out figures follow",
           "toy test reconstruction BLEU " + fmt(100 * b, 2) + " NLL " + fmt(ppl.nll) +
               " perplexity " + fmt(ppl.perplexity));
  }

  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
