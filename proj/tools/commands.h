#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "styleeq/seq2seq/model.h"
#include "styleeq/seq2seq/trainer.h"
#include "styleeq/stylometry.h"

namespace cli {

// Invalid configuration; exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusArgs {
  std::string corpus;
  std::string format = "auto";  // jsonl, text or auto
};

struct ExtractArgs {
  CorpusArgs corpus;
  std::string wordlists;
  std::string out;
};

struct AnnotateArgs {
  CorpusArgs corpus;
  std::string out;
};

struct TrainArgs {
  CorpusArgs corpus;
  std::string wordlists;
  std::string out_dir;
  std::string model = "styleeq";
  int min_count = 1;
  int max_vocab = 0;
  std::string validation_split = "dev";
  std::string checkpoint;
  std::string resume;
  styleeq::ModelConfig arch;
  styleeq::TrainConfig train;
};

struct ClassifierArgs {
  CorpusArgs corpus;
  std::string out;
  std::string report;
  std::string eval_split = "test";
  std::string mode = "ablated-nva";
  styleeq::ClassifierConfig config;
};

struct TransferArgs {
  CorpusArgs corpus;  // sibling pool: the train split
  std::string wordlists;
  std::string model_file;
  std::string vocab;
  std::string input;
  std::string target;
  std::string method = "all";
  std::string classifier;
  std::string out;
  std::string export_annotation;
  std::string annotation_key;
  int n = 16;
  int beam = 0;  // 0: 8 for styleeq, 16 for the baseline
  int max_decode_len = 60;
  std::uint64_t seed = 1;
};

struct EvaluateArgs {
  CorpusArgs corpus;
  std::string wordlists;
  std::vector<std::string> model_files;
  std::vector<std::string> model_names;
  std::string vocab;
  std::string classifier;
  std::string out_dir;
  std::string split = "test";
  std::vector<std::string> reports = {"reconstruction", "fidelity", "accuracy"};
  int per_genre = 50;
  std::vector<int> deltas = {-3, -2, -1, 1, 2, 3};
  int references_per_genre = 0;  // 0: the whole split
  int n = 16;
  int beam = 8;
  int baseline_beam = 16;
  int max_decode_len = 60;
  std::uint64_t seed = 1;
};

struct AggregateArgs {
  std::string trials;
  std::string out;
};

struct ExportArgs {
  std::vector<std::string> candidates;
  std::vector<std::string> model_names;
  std::string method = "top";
  std::string csv;
  std::string key;
  std::uint64_t seed = 1;
};

void run_extract(const ExtractArgs& a);
void run_annotate(const AnnotateArgs& a);
void run_train(const TrainArgs& a);
void run_train_classifier(const ClassifierArgs& a);
void run_transfer(const TransferArgs& a);
void run_evaluate(const EvaluateArgs& a);
void run_aggregate(const AggregateArgs& a);
void run_export(const ExportArgs& a);

}  // namespace cli
