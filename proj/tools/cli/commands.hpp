#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cse/evaluator.hpp"
#include "cse/interactions.hpp"
#include "cse/train_config.hpp"

namespace cse::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

// Parses `args` (args[0] is the program name), runs the subcommand and maps
// failures to exit codes. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PreprocessOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  EdgeType edge_type = EdgeType::binary;
  std::optional<double> threshold;
  std::size_t min_degree = 10;
};

// load -> merge duplicates -> binarize -> min-degree filter -> canonical order.
InteractionTable preprocess_table(const InteractionTable& raw, const PreprocessOptions& options);

struct EvalSettings {
  double split_ratio = 0.8;
  std::size_t repeats = 1;
  std::vector<std::size_t> cutoffs{10};
  ColdUserPolicy cold_users = ColdUserPolicy::skip;
  bool per_user = false;
};

struct EvalRun {
  std::uint64_t split_seed = 0;
  std::uint64_t train_seed = 0;
  std::vector<EvalReport> reports;
};

struct EvalSummary {
  std::vector<EvalRun> runs;
  std::vector<EvalReport> mean;  // per cutoff, averaged over runs
};

// Split seeds and training seeds of repeat r derive from config.seed.
EvalSummary run_evaluation(const InteractionTable& edges, const TrainConfig& config,
                           const EvalSettings& settings);

}  // namespace cse::cli
