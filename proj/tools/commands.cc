#include "commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "styleeq/annotate.h"
#include "styleeq/controls.h"
#include "styleeq/corpus.h"
#include "styleeq/eval.h"
#include "styleeq/seq2seq/beam.h"
#include "styleeq/seq2seq/model_io.h"
#include "styleeq/tagger.h"
#include "styleeq/transfer.h"
#include "styleeq/vocabulary.h"

namespace fs = std::filesystem;
using namespace styleeq;

namespace cli {
namespace {

CorpusFormat resolve_format(const CorpusArgs& a) {
  if (a.format != "auto") {
    const auto f = parse_corpus_format(a.format);
    if (!f) throw ConfigError("unknown corpus format: " + a.format);
    return *f;
  }
  const fs::path p(a.corpus);
  if (fs::is_directory(p)) {
    for (const char* name : {"train.txt", "dev.txt", "test.txt"}) {
      if (fs::exists(p / name)) return CorpusFormat::PlainText;
    }
    return CorpusFormat::AnnotatedJsonl;
  }
  return p.extension() == ".txt" ? CorpusFormat::PlainText : CorpusFormat::AnnotatedJsonl;
}

Corpus load(const CorpusArgs& a) { return load_corpus(a.corpus, resolve_format(a)); }

Split split_of(const std::string& name) {
  const auto s = parse_split(name);
  if (!s) throw ConfigError("unknown split: " + name);
  return *s;
}

Style style_of(const std::string& name) {
  const auto s = parse_style(name);
  if (!s) throw ConfigError("unknown style: " + name);
  return *s;
}

Selection selection_of(const std::string& name) {
  const auto s = parse_selection(name);
  if (!s) throw ConfigError("unknown selection method: " + name);
  return *s;
}

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

LoadedModel load_checked(const std::string& path, const Vocabulary& vocab,
                         const WordListSet& wordlists) {
  LoadedModel m = load_model(path);
  check_vocab(m.header, vocab);
  if (m.header.wordlist_hash != wordlists.hash()) {
    throw ArtifactMismatch("model " + path + " was trained with different word lists");
  }
  return m;
}

// Reference lines are annotated records or "style<TAB>text".
std::vector<Sentence> read_references(const std::string& path) {
  std::vector<Sentence> out;
  int i = 0;
  for (const std::string& line : read_lines(path)) {
    const std::string id = "input-" + std::to_string(i++);
    if (line.front() == '{') {
      out.push_back(parse_record(line, id));
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(path + ": expected style<TAB>text on line " + std::to_string(i));
    }
    Sentence s = annotate_fallback(line.substr(tab + 1));
    s.style = style_of(line.substr(0, tab));
    s.id = id;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TransferCandidate> candidates_for(const LoadedModel& m, const Vocabulary& vocab,
                                              const WordListSet& wordlists, const Sentence& ref,
                                              Style target, const std::vector<Sentence>& pool,
                                              int n, const DecodeSettings& decode,
                                              std::uint64_t seed) {
  if (m.header.config.kind == ModelKind::Genre) {
    return baseline_transfer(*m.model, vocab, wordlists, ref, target, decode);
  }
  return transfer(*m.model, vocab, wordlists, ref, target, pool, n, decode, seed);
}

std::string safe_name(std::string name) {
  for (char& c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return name;
}

}  // namespace

void run_extract(const ExtractArgs& a) {
  const Corpus corpus = load(a.corpus);
  const WordListSet wordlists = WordListSet::load(a.wordlists);
  std::ostringstream out;
  for (Split sp : {Split::Train, Split::Dev, Split::Test}) {
    for (const Sentence& s : corpus.split(sp)) {
      const ControlVector z = extract_controls(s, wordlists);
      nlohmann::ordered_json j;
      j["id"] = s.id;
      j["split"] = split_name(sp);
      j["style"] = style_name(s.style);
      nlohmann::ordered_json controls = nlohmann::ordered_json::object();
      for (Control c : all_controls()) {
        controls[std::string(control_name(c))] =
            is_parse_control(c) && z.parse_absent ? nlohmann::ordered_json(nullptr)
                                                  : nlohmann::ordered_json(z[c]);
      }
      j["controls"] = controls;
      out << j.dump() << '\n';
    }
  }
  write_file(a.out, out.str());
}

void run_annotate(const AnnotateArgs& a) {
  const Corpus corpus = load(a.corpus);
  auto out = open_out(a.out);
  save_corpus(corpus, out);
}

void run_train(const TrainArgs& a) {
  const Corpus corpus = load(a.corpus);
  const WordListSet wordlists = WordListSet::load(a.wordlists);
  const Vocabulary vocab = build_vocab(corpus, a.min_count, a.max_vocab);

  ModelConfig arch = a.arch;
  const auto kind = parse_model_kind(a.model);
  if (!kind) throw ConfigError("unknown model: " + a.model);
  arch.kind = *kind;
  TrainConfig cfg = a.train;
  cfg.validation_split = split_of(a.validation_split);
  try {
    arch.validate();
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const auto train_set = make_examples(vocab, wordlists, corpus.train);
  const auto validation = make_examples(vocab, wordlists, corpus.split(cfg.validation_split));
  if (train_set.empty()) throw ConfigError("train split is empty");
  if (validation.empty()) {
    throw ConfigError("validation split '" + a.validation_split + "' is empty");
  }

  Seq2Seq<float> model(arch, VocabSizes::of(vocab));
  const ModelHeader header = model_header(model, vocab.hash(), wordlists.hash());

  TrainHooks hooks;
  hooks.on_epoch = [](const EpochLog& e) { std::cerr << e.to_json() << '\n'; };
  if (!a.checkpoint.empty()) {
    const fs::path ck(a.checkpoint);
    if (ck.has_parent_path()) fs::create_directories(ck.parent_path());
    hooks.on_checkpoint = [&](const nn::ParameterStore<float>& current,
                              const nn::ParameterStore<float>& best, const TrainState& state) {
      save_checkpoint(a.checkpoint, header, current, best, state);
    };
  }
  std::optional<ResumePoint> resume;
  if (!a.resume.empty()) resume = load_checkpoint(a.resume, header, model);

  const TrainState state =
      train(model, train_set, validation, vocab, cfg, hooks, resume ? &*resume : nullptr);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  save_model((dir / "model.bin").string(), model, vocab.hash(), wordlists.hash());
  vocab.save((dir / "vocab.json").string());
  std::ostringstream log;
  for (const EpochLog& e : state.log) log << e.to_json() << '\n';
  write_file((dir / "train_log.jsonl").string(), log.str());
  std::cout << "epochs\t" << state.epoch << "\nbest_epoch\t" << state.best_epoch
            << "\nbest_bleu\t" << format_fixed(state.best_bleu, 4) << '\n';
}

void run_train_classifier(const ClassifierArgs& a) {
  const Corpus corpus = load(a.corpus);
  ClassifierConfig cfg = a.config;
  const auto mode = parse_ablation(a.mode);
  if (!mode) throw ConfigError("unknown ablation mode: " + a.mode);
  cfg.mode = *mode;
  const Split eval_split = split_of(a.eval_split);
  const auto clf = NgramStyleClassifier::train(corpus.train, cfg);
  clf.save(a.out);
  if (!a.report.empty()) {
    const auto acc = evaluate_classifier(clf, corpus.split(eval_split));
    const std::string tsv = classifier_tsv({{cfg.mode, acc}});
    write_file(a.report, tsv);
    std::cout << tsv;
  }
}

void run_transfer(const TransferArgs& a) {
  const Corpus corpus = load(a.corpus);
  const WordListSet wordlists = WordListSet::load(a.wordlists);
  const Vocabulary vocab = Vocabulary::load(a.vocab);
  const LoadedModel m = load_checked(a.model_file, vocab, wordlists);
  const Style target = style_of(a.target);
  const Selection method = selection_of(a.method);
  if (method == Selection::Oracle && a.classifier.empty()) {
    throw ConfigError("--method oracle needs --classifier");
  }
  if (a.n < 1) throw ConfigError("--n must be >= 1");
  const bool baseline = m.header.config.kind == ModelKind::Genre;
  DecodeSettings decode;
  decode.beam = a.beam > 0 ? a.beam : (baseline ? 16 : 8);
  decode.max_len = a.max_decode_len;

  std::optional<NgramStyleClassifier> clf;
  if (!a.classifier.empty()) clf = NgramStyleClassifier::load(a.classifier);
  const OutputTagger tagger(corpus.train);

  std::ostringstream out;
  std::vector<AnnotationItem> items;
  const std::string model_name(model_kind_name(m.header.config.kind));
  for (const Sentence& ref : read_references(a.input)) {
    auto cands = candidates_for(m, vocab, wordlists, ref, target, corpus.train, a.n, decode,
                                a.seed);
    if (clf) score_candidates(cands, *clf, tagger);
    for (const auto& c : select(cands, method)) {
      out << c.to_json() << '\n';
      items.push_back({model_name, c});
    }
  }
  if (a.out.empty()) {
    std::cout << out.str();
  } else {
    write_file(a.out, out.str());
  }
  if (!a.export_annotation.empty()) {
    const std::string key =
        a.annotation_key.empty() ? a.export_annotation + ".key.csv" : a.annotation_key;
    export_annotation(std::move(items), a.seed, a.export_annotation, key);
  }
}

void run_evaluate(const EvaluateArgs& a) {
  if (a.model_files.empty()) throw ConfigError("evaluate needs at least one --model_file");
  if (!a.model_names.empty() && a.model_names.size() != a.model_files.size()) {
    throw ConfigError("--model_name must be given once per --model_file");
  }
  const std::set<std::string> known = {"reconstruction", "fidelity", "accuracy"};
  std::set<std::string> wanted;
  for (const auto& r : a.reports) {
    if (!known.count(r)) throw ConfigError("unknown report: " + r);
    wanted.insert(r);
  }
  if (wanted.count("accuracy") && a.classifier.empty()) {
    throw ConfigError("the accuracy report needs --classifier");
  }
  for (int d : a.deltas) {
    if (d == 0) throw ConfigError("--deltas must be non-zero");
  }

  const Corpus corpus = load(a.corpus);
  const WordListSet wordlists = WordListSet::load(a.wordlists);
  const Vocabulary vocab = Vocabulary::load(a.vocab);
  const std::vector<Sentence>& split = corpus.split(split_of(a.split));
  if (split.empty()) throw ConfigError("split '" + a.split + "' is empty");
  std::optional<NgramStyleClassifier> clf;
  if (!a.classifier.empty()) clf = NgramStyleClassifier::load(a.classifier);

  std::vector<LoadedModel> models;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.model_files.size(); ++i) {
    models.push_back(load_checked(a.model_files[i], vocab, wordlists));
    names.push_back(a.model_names.empty()
                        ? std::string(model_kind_name(models.back().header.config.kind))
                        : a.model_names[i]);
  }
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);

  if (wanted.count("reconstruction")) {
    const auto examples = make_examples(vocab, wordlists, split);
    std::vector<ReconstructionRow> rows;
    for (std::size_t i = 0; i < models.size(); ++i) {
      const auto ppl = perplexity(*models[i].model, examples);
      const double b =
          reconstruction_bleu(*models[i].model, vocab, examples, a.beam, a.max_decode_len);
      rows.push_back({names[i], b, ppl.nll, ppl.perplexity});
    }
    const std::string tsv = reconstruction_tsv(rows);
    write_file((dir / "reconstruction.tsv").string(), tsv);
    std::cout << tsv << '\n';
  }

  if (wanted.count("fidelity")) {
    std::array<int, kNumStyles> have{};
    for (const auto& s : split) ++have[style_index(s.style)];
    for (Style st : kAllStyles) {
      if (have[style_index(st)] < a.per_genre) {
        throw ConfigError("split '" + a.split + "' has " + std::to_string(have[style_index(st)]) +
                          " " + std::string(style_name(st)) + " sentences; --per_genre is " +
                          std::to_string(a.per_genre));
      }
    }
    const auto samples = sample_per_style(split, a.per_genre, a.seed);
    for (std::size_t i = 0; i < models.size(); ++i) {
      if (models[i].header.config.kind != ModelKind::StyleEQ) continue;
      const auto report =
          control_fidelity(samples, wordlists,
                           model_generator(*models[i].model, vocab, wordlists, a.beam,
                                           a.max_decode_len),
                           a.deltas);
      std::ostringstream trials;
      for (const auto& t : report.trials) trials << t.to_json() << '\n';
      const std::string tag = safe_name(names[i]);
      write_file((dir / ("fidelity_trials_" + tag + ".jsonl")).string(), trials.str());
      const std::string tsv = fidelity_tsv(report);
      write_file((dir / ("fidelity_" + tag + ".tsv")).string(), tsv);
      std::cout << tsv << '\n';
    }
  }

  if (wanted.count("accuracy")) {
    const auto refs =
        a.references_per_genre > 0 ? sample_per_style(split, a.references_per_genre, a.seed)
                                   : split;
    const OutputTagger tagger(corpus.train);
    std::vector<TransferAccuracyReport> reports;
    for (std::size_t i = 0; i < models.size(); ++i) {
      DecodeSettings decode;
      decode.max_len = a.max_decode_len;
      decode.beam = models[i].header.config.kind == ModelKind::Genre ? a.baseline_beam : a.beam;
      const CandidateSource source = [&, i](const Sentence& ref, Style target) {
        return candidates_for(models[i], vocab, wordlists, ref, target, corpus.train, a.n,
                              decode, a.seed);
      };
      std::vector<TransferCandidate> log;
      reports.push_back(transfer_accuracy(names[i], refs, source, *clf, tagger, &log));
      std::ostringstream cands;
      for (const auto& c : log) cands << c.to_json() << '\n';
      write_file((dir / ("transfer_candidates_" + safe_name(names[i]) + ".jsonl")).string(),
                 cands.str());
      if (reports.back().dominance_violations > 0) {
        std::cerr << names[i] << ": " << reports.back().dominance_violations
                  << " oracle/top dominance violations\n";
      }
    }
    const std::string tsv = transfer_accuracy_tsv(reports);
    write_file((dir / "transfer_accuracy.tsv").string(), tsv);
    std::cout << tsv;
  }
}

void run_aggregate(const AggregateArgs& a) {
  std::vector<FidelityTrial> trials;
  std::set<std::string> sentences;
  std::set<int> deltas;
  for (const std::string& line : read_lines(a.trials)) {
    trials.push_back(FidelityTrial::from_json(line));
    sentences.insert(trials.back().sentence_id);
    deltas.insert(trials.back().delta);
  }
  const auto report = aggregate_trials(trials, static_cast<int>(sentences.size()),
                                       std::vector<int>(deltas.begin(), deltas.end()));
  const std::string tsv = fidelity_tsv(report);
  if (a.out.empty()) {
    std::cout << tsv;
  } else {
    write_file(a.out, tsv);
  }
}

void run_export(const ExportArgs& a) {
  if (!a.model_names.empty() && a.model_names.size() != a.candidates.size()) {
    throw ConfigError("--model_name must be given once per --candidates file");
  }
  const Selection method = selection_of(a.method);
  std::vector<AnnotationItem> items;
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    const std::string name =
        a.model_names.empty() ? fs::path(a.candidates[i]).stem().string() : a.model_names[i];
    // Candidates of one reference/target pair are contiguous in the log.
    std::vector<TransferCandidate> group;
    auto flush = [&] {
      if (group.empty()) return;
      for (auto& c : select(group, method)) items.push_back({name, std::move(c)});
      group.clear();
    };
    for (const std::string& line : read_lines(a.candidates[i])) {
      TransferCandidate c = TransferCandidate::from_json(line);
      if (!group.empty() &&
          (group.back().reference_id != c.reference_id || group.back().target != c.target)) {
        flush();
      }
      group.push_back(std::move(c));
    }
    flush();
  }
  export_annotation(std::move(items), a.seed, a.csv, a.key);
}

}  // namespace cli
