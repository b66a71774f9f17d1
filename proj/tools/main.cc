#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "styleeq/corpus.h"
#include "styleeq/seq2seq/model_io.h"

namespace {

void corpus_options(CLI::App* sub, cli::CorpusArgs& c) {
  sub->add_option("--corpus", c.corpus, "Corpus file or directory")
      ->required()
      ->check(CLI::ExistingPath);
  sub->add_option("--format", c.format, "Corpus format")
      ->check(CLI::IsMember({"auto", "jsonl", "annotated-jsonl", "text", "plain-text"}))
      ->capture_default_str();
}

void wordlist_option(CLI::App* sub, std::string& path) {
  sub->add_option("--wordlists", path, "Word-list JSON file")
      ->required()
      ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feature-controlled literary style transfer"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key-value config file; flags override it")
      ->envname("STYLEEQ_CONFIG");

  cli::ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Write per-sentence control vectors as JSONL");
  corpus_options(extract, ex.corpus);
  wordlist_option(extract, ex.wordlists);
  extract->add_option("--out", ex.out, "Output JSONL")->required();
  extract->callback([&] { cli::run_extract(ex); });

  cli::AnnotateArgs an;
  auto* annotate = app.add_subcommand("annotate", "Tag a plain-text corpus and write JSONL");
  corpus_options(annotate, an.corpus);
  annotate->add_option("--out", an.out, "Output JSONL")->required();
  annotate->callback([&] { cli::run_annotate(an); });

  cli::TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train a StyleEQ or genre-baseline model");
  corpus_options(train, tr.corpus);
  wordlist_option(train, tr.wordlists);
  train->add_option("--out_dir", tr.out_dir, "Directory for model, vocabulary and log")
      ->required();
  train->add_option("--model", tr.model)
      ->check(CLI::IsMember({"styleeq", "baseline"}))
      ->capture_default_str();
  train->add_option("--min_count", tr.min_count)->capture_default_str();
  train->add_option("--max_vocab", tr.max_vocab)->capture_default_str();
  train->add_option("--validation_split", tr.validation_split)
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
  train->add_option("--checkpoint", tr.checkpoint, "Checkpoint written after every epoch");
  train->add_option("--resume", tr.resume, "Checkpoint to continue from")
      ->check(CLI::ExistingFile);
  train->add_option("--word_emb", tr.arch.word_emb)->capture_default_str();
  train->add_option("--lemma_emb", tr.arch.lemma_emb)->capture_default_str();
  train->add_option("--fine_emb", tr.arch.fine_emb)->capture_default_str();
  train->add_option("--coarse_emb", tr.arch.coarse_emb)->capture_default_str();
  train->add_option("--hidden", tr.arch.hidden)->capture_default_str();
  train->add_option("--layers", tr.arch.layers)->capture_default_str();
  train->add_option("--dec_emb", tr.arch.dec_emb)->capture_default_str();
  train->add_option("--ctrl_emb", tr.arch.ctrl_emb)->capture_default_str();
  train->add_option("--perceptron", tr.arch.perceptron)->capture_default_str();
  train->add_option("--lr", tr.train.lr)->capture_default_str();
  train->add_option("--weight_decay", tr.train.weight_decay)->capture_default_str();
  train->add_option("--batch", tr.train.batch)->capture_default_str();
  train->add_option("--dropout", tr.train.dropout)->capture_default_str();
  train->add_option("--max_epochs", tr.train.max_epochs)->capture_default_str();
  train->add_option("--seed", tr.train.seed)->capture_default_str();
  train->add_option("--max_decode_len", tr.train.max_decode_len)->capture_default_str();
  train->add_option("--validate_every", tr.train.validate_every)->capture_default_str();
  train->add_option("--beam", tr.train.beam)->capture_default_str();
  train->add_option("--clip_norm", tr.train.clip_norm)->capture_default_str();
  train->add_option("--validation_limit", tr.train.validation_limit)->capture_default_str();
  train->add_option("--target_bleu", tr.train.target_bleu)->capture_default_str();
  train->add_option("--threads", tr.train.threads)->capture_default_str();
  train->callback([&] { cli::run_train(tr); });

  cli::ClassifierArgs cl;
  auto* classifier = app.add_subcommand("train-classifier", "Train an n-gram style classifier");
  corpus_options(classifier, cl.corpus);
  classifier->add_option("--out", cl.out, "Classifier file")->required();
  classifier->add_option("--report", cl.report, "Accuracy TSV on --eval_split");
  classifier->add_option("--eval_split", cl.eval_split)
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
  classifier->add_option("--mode", cl.mode, "Ablation mode")->capture_default_str();
  classifier->add_option("--dim", cl.config.dim)->capture_default_str();
  classifier->add_option("--max_ngram", cl.config.max_ngram)->capture_default_str();
  classifier->add_option("--bucket_bits", cl.config.bucket_bits)->capture_default_str();
  classifier->add_option("--lr", cl.config.lr)->capture_default_str();
  classifier->add_option("--epochs", cl.config.epochs)->capture_default_str();
  classifier->add_option("--seed", cl.config.seed)->capture_default_str();
  classifier->add_flag("--keep_propn", cl.config.content_only_keeps_propn,
                       "ContentOnly keeps proper nouns");
  classifier->callback([&] { cli::run_train_classifier(cl); });

  cli::TransferArgs tf;
  auto* transfer = app.add_subcommand("transfer", "Generate transfer candidates");
  corpus_options(transfer, tf.corpus);
  wordlist_option(transfer, tf.wordlists);
  transfer->add_option("--model_file", tf.model_file)->required()->check(CLI::ExistingFile);
  transfer->add_option("--vocab", tf.vocab)->required()->check(CLI::ExistingFile);
  transfer->add_option("--input", tf.input, "References: JSONL records or style<TAB>text")
      ->required()
      ->check(CLI::ExistingFile);
  transfer->add_option("--target", tf.target)
      ->required()
      ->check(CLI::IsMember({"scifi", "philosophy", "gothic"}));
  transfer->add_option("--method", tf.method)
      ->check(CLI::IsMember({"all", "top", "oracle"}))
      ->capture_default_str();
  transfer->add_option("--classifier", tf.classifier)->check(CLI::ExistingFile);
  transfer->add_option("--out", tf.out, "Output JSONL (default stdout)");
  transfer->add_option("--export_annotation", tf.export_annotation, "Annotation CSV");
  transfer->add_option("--annotation_key", tf.annotation_key, "Annotation key CSV");
  transfer->add_option("--n", tf.n)->capture_default_str();
  transfer->add_option("--beam", tf.beam, "0 picks 8 for styleeq, 16 for baseline")
      ->capture_default_str();
  transfer->add_option("--max_decode_len", tf.max_decode_len)->capture_default_str();
  transfer->add_option("--seed", tf.seed)->capture_default_str();
  transfer->callback([&] { cli::run_transfer(tf); });

  cli::EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Reconstruction, fidelity and accuracy reports");
  corpus_options(evaluate, ev.corpus);
  wordlist_option(evaluate, ev.wordlists);
  evaluate->add_option("--model_file", ev.model_files)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--model_name", ev.model_names);
  evaluate->add_option("--vocab", ev.vocab)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--classifier", ev.classifier)->check(CLI::ExistingFile);
  evaluate->add_option("--out_dir", ev.out_dir)->required();
  evaluate->add_option("--split", ev.split)
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
  evaluate->add_option("--reports", ev.reports)->delimiter(',')->capture_default_str();
  evaluate->add_option("--per_genre", ev.per_genre)->capture_default_str();
  evaluate->add_option("--deltas", ev.deltas)->delimiter(',')->capture_default_str();
  evaluate->add_option("--references_per_genre", ev.references_per_genre)
      ->capture_default_str();
  evaluate->add_option("--n", ev.n)->capture_default_str();
  evaluate->add_option("--beam", ev.beam)->capture_default_str();
  evaluate->add_option("--baseline_beam", ev.baseline_beam)->capture_default_str();
  evaluate->add_option("--max_decode_len", ev.max_decode_len)->capture_default_str();
  evaluate->add_option("--seed", ev.seed)->capture_default_str();
  evaluate->callback([&] { cli::run_evaluate(ev); });

  cli::AggregateArgs ag;
  auto* aggregate = app.add_subcommand("aggregate", "Rebuild a fidelity table from a trial log");
  aggregate->add_option("--trials", ag.trials)->required()->check(CLI::ExistingFile);
  aggregate->add_option("--out", ag.out, "Output TSV (default stdout)");
  aggregate->callback([&] { cli::run_aggregate(ag); });

  cli::ExportArgs xp;
  auto* exporter = app.add_subcommand("export-annotation", "Blind CSV for human annotation");
  exporter->add_option("--candidates", xp.candidates, "Candidate JSONL, one per model")
      ->required()
      ->check(CLI::ExistingFile);
  exporter->add_option("--model_name", xp.model_names);
  exporter->add_option("--method", xp.method)
      ->check(CLI::IsMember({"all", "top", "oracle"}))
      ->capture_default_str();
  exporter->add_option("--csv", xp.csv)->required();
  exporter->add_option("--key", xp.key)->required();
  exporter->add_option("--seed", xp.seed)->capture_default_str();
  exporter->callback([&] { cli::run_export(xp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const styleeq::ArtifactMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
