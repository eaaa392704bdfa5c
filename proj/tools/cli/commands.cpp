#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cli/manifest.hpp"
#include "cse/errors.hpp"
#include "cse/graph.hpp"
#include "cse/rng.hpp"
#include "cse/trainer.hpp"

namespace cse::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string env_name(const std::string& flag) {
  std::string name = "CSE_";
  for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

// Adds `--flag` with a CSE_FLAG environment fallback.
template <class T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(name))->capture_default_str();
}

CLI::Option* switch_flag(CLI::App* app, const std::string& name, bool& target, const std::string& help) {
  return app->add_flag("--" + name, target, help)->envname(env_name(name));
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

// Training flags shared by `train` and `eval`, as strings until resolved.
struct TrainFlags {
  std::string loss = "rate";
  std::size_t dim = 100;
  double alpha = 0.1;
  std::optional<double> lambda;
  double reg = 0.025;
  std::size_t walk_order = 2;
  std::size_t negatives = 5;
  double samples_multiplier = 80.0;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::string negative_dist = "degree";
  std::string lr_schedule = "linear";
  std::string context_init = "zero";
  std::uint64_t progress_every = 1'000'000;
  bool quiet = false;

  void attach(CLI::App* app) {
    flag(app, "loss", loss, "direct-proximity loss")->check(CLI::IsMember({"rate", "rank"}));
    flag(app, "dim", dim, "embedding dimension")->check(CLI::PositiveNumber);
    flag(app, "alpha", alpha, "initial learning rate")->check(CLI::PositiveNumber);
    app->add_option("--lambda", lambda, "neighborhood loss weight (default 0.05 rate / 0.1 rank)")
        ->envname("CSE_LAMBDA")
        ->check(CLI::NonNegativeNumber);
    flag(app, "reg", reg, "L2 weight decay on vertex rows")->check(CLI::NonNegativeNumber);
    flag(app, "walk-order", walk_order, "random walk length k")->check(CLI::PositiveNumber);
    flag(app, "negatives", negatives, "negative samples per positive")->check(CLI::NonNegativeNumber);
    flag(app, "samples-multiplier", samples_multiplier, "training steps as a multiple of |E|")
        ->check(CLI::NonNegativeNumber);
    flag(app, "workers", workers, "training threads")->check(CLI::PositiveNumber);
    flag(app, "seed", seed, "random seed");
    flag(app, "negative-dist", negative_dist, "negative sampling distribution")
        ->check(CLI::IsMember({"degree", "uniform"}));
    flag(app, "lr-schedule", lr_schedule, "learning-rate schedule")
        ->check(CLI::IsMember({"linear", "constant"}));
    flag(app, "context-init", context_init, "context matrix initialization")
        ->check(CLI::IsMember({"zero", "random"}));
    flag(app, "progress-every", progress_every, "steps between progress lines")->check(CLI::PositiveNumber);
    switch_flag(app, "quiet", quiet, "suppress progress output");
  }

  TrainConfig resolve() const {
    TrainConfig c;
    c.loss = parse_loss_variant(loss);
    c.dim = dim;
    c.learning_rate = alpha;
    c.lambda_ns = lambda;
    c.lambda_reg = reg;
    c.walk_order = walk_order;
    c.negatives = negatives;
    c.samples_multiplier = samples_multiplier;
    c.workers = workers;
    c.seed = seed;
    c.negative_distribution = parse_negative_distribution(negative_dist);
    c.schedule = parse_schedule(lr_schedule);
    c.context_init = parse_context_init(context_init);
    c.validate();
    return c;
  }
};

nlohmann::json config_json(const TrainConfig& c) {
  return {{"loss", to_string(c.loss)},
          {"dim", c.dim},
          {"alpha", c.learning_rate},
          {"lambda", c.ns_weight()},
          {"reg", c.lambda_reg},
          {"walk_order", c.walk_order},
          {"negatives", c.negatives},
          {"samples_multiplier", c.samples_multiplier},
          {"workers", c.workers},
          {"seed", c.seed},
          {"negative_dist", to_string(c.negative_distribution)},
          {"lr_schedule", to_string(c.schedule)},
          {"context_init", to_string(c.context_init)}};
}

TrainOptions progress_options(const TrainFlags& flags, std::ostream& err) {
  TrainOptions options;
  options.report_every = flags.progress_every;
  if (!flags.quiet) {
    options.progress = [&err](const StepReport& r) {
      const double pct = r.total_samples == 0 ? 100.0
                                              : 100.0 * static_cast<double>(r.samples_done) /
                                                    static_cast<double>(r.total_samples);
      err << "samples " << r.samples_done << '/' << r.total_samples << " (" << std::fixed
          << std::setprecision(1) << pct << "%) loss " << std::setprecision(4) << r.loss_ema
          << " rate " << std::setprecision(0) << r.samples_per_second() << "/s\n"
          << std::defaultfloat;
    };
  }
  return options;
}

InteractionTable load_canonical(const std::filesystem::path& path) {
  return canonicalize(load_edge_list(path));
}

std::vector<std::string> args_without_program(const std::vector<std::string>& args) {
  return {args.begin() + (args.empty() ? 0 : 1), args.end()};
}

}  // namespace

InteractionTable preprocess_table(const InteractionTable& raw, const PreprocessOptions& options) {
  const double threshold = options.threshold.value_or(default_threshold(options.edge_type));
  InteractionTable t = merge_duplicates(raw);
  t = binarize(t, options.edge_type, threshold);
  if (t.rows.empty()) throw DataError("no interactions survive binarization");
  t = filter_min_degree(t, options.min_degree);
  return canonicalize(t);
}

EvalSummary run_evaluation(const InteractionTable& edges, const TrainConfig& config,
                           const EvalSettings& settings) {
  if (settings.repeats == 0) throw std::invalid_argument("repeats must be positive");
  EvalSummary summary;
  for (std::size_t r = 0; r < settings.repeats; ++r) {
    EvalRun run;
    run.split_seed = Rng::derive(config.seed, 2 * r);
    run.train_seed = Rng::derive(config.seed, 2 * r + 1);
    const SplitPair halves = split(edges, settings.split_ratio, run.split_seed);
    const BipartiteGraph graph = build_graph(halves.train);
    TrainConfig c = config;
    c.seed = run.train_seed;
    const EmbeddingTriplet model = train(graph, c);
    EvalOptions options;
    options.cutoffs = settings.cutoffs;
    options.cold_users = settings.cold_users;
    options.workers = config.workers;
    options.keep_per_user = settings.per_user;
    run.reports = evaluate(model, graph, halves.test, options);
    summary.runs.push_back(std::move(run));
  }

  summary.mean.resize(settings.cutoffs.size());
  for (std::size_t c = 0; c < settings.cutoffs.size(); ++c) {
    EvalReport& m = summary.mean[c];
    m.cutoff = settings.cutoffs[c];
    for (const auto& run : summary.runs) {
      m.recall += run.reports[c].recall;
      m.map += run.reports[c].map;
      m.users_evaluated += run.reports[c].users_evaluated;
      m.users_skipped += run.reports[c].users_skipped;
    }
    const auto n = static_cast<double>(summary.runs.size());
    m.recall /= n;
    m.map /= n;
    m.users_evaluated /= summary.runs.size();
    m.users_skipped /= summary.runs.size();
  }
  return summary;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collaborative similarity embedding: preprocess, train, evaluate, recommend"};
  app.require_subcommand(1);

  // preprocess
  PreprocessOptions pre;
  std::string edge_type = "binary";
  auto* preprocess = app.add_subcommand("preprocess", "binarize and filter a raw edge list");
  flag(preprocess, "input", pre.input, "raw edge list")->required();
  flag(preprocess, "output", pre.output, "canonical edge list to write")->required();
  flag(preprocess, "edge-type", edge_type, "input value semantics")
      ->check(CLI::IsMember({"five_star", "count", "binary"}));
  preprocess->add_option("--threshold", pre.threshold, "binarization threshold (3.5 five_star, 3 count)")
      ->envname("CSE_THRESHOLD");
  flag(preprocess, "min-degree", pre.min_degree, "drop users with fewer distinct items");

  // train
  TrainFlags train_flags;
  std::filesystem::path train_input;
  std::filesystem::path train_output;
  bool export_context = false;
  auto* train_cmd = app.add_subcommand("train", "learn embeddings from an edge list");
  flag(train_cmd, "input", train_input, "edge list")->required();
  flag(train_cmd, "output", train_output, "embedding file to write")->required();
  switch_flag(train_cmd, "export-context", export_context,
              "also write <output>.uc and <output>.ic context matrices");
  train_flags.attach(train_cmd);

  // eval
  TrainFlags eval_flags;
  EvalSettings eval_settings;
  std::filesystem::path eval_input;
  std::filesystem::path eval_output;
  std::string cold_users = "skip";
  auto* eval_cmd = app.add_subcommand("eval", "split, train and report Recall@N / mAP@N");
  flag(eval_cmd, "input", eval_input, "edge list")->required();
  flag(eval_cmd, "split-ratio", eval_settings.split_ratio, "training fraction")
      ->check(CLI::Range(0.0, 1.0));
  flag(eval_cmd, "repeats", eval_settings.repeats, "independent splits to average")
      ->check(CLI::PositiveNumber);
  flag(eval_cmd, "cutoff", eval_settings.cutoffs, "ranking cutoff N (repeatable)")
      ->check(CLI::PositiveNumber);
  flag(eval_cmd, "cold-users", cold_users, "users with only test edges")
      ->check(CLI::IsMember({"skip", "zero"}));
  flag(eval_cmd, "output", eval_output, "also write the report (and its manifest) here");
  switch_flag(eval_cmd, "per-user", eval_settings.per_user, "print per-user metrics");
  eval_flags.attach(eval_cmd);

  // recommend
  std::filesystem::path rec_embeddings;
  std::filesystem::path rec_input;
  std::string rec_user;
  std::size_t rec_top = 10;
  auto* rec_cmd = app.add_subcommand("recommend", "top-N items for one user");
  flag(rec_cmd, "embeddings", rec_embeddings, "embedding file written by train")->required();
  flag(rec_cmd, "input", rec_input, "training edge list used for that embedding")->required();
  flag(rec_cmd, "user", rec_user, "user key")->required();
  flag(rec_cmd, "top", rec_top, "number of items")->check(CLI::PositiveNumber);

  // stats
  std::filesystem::path stats_input;
  auto* stats_cmd = app.add_subcommand("stats", "print graph statistics for an edge list");
  flag(stats_cmd, "input", stats_input, "edge list")->required();

  std::vector<std::string> argv_strings = args.empty() ? std::vector<std::string>{"cse"} : args;
  std::vector<char*> argv;
  for (auto& a : argv_strings) argv.push_back(a.data());

  TrainConfig train_config;
  TrainConfig eval_config;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (*preprocess) pre.edge_type = parse_edge_type(edge_type);
    if (*train_cmd) train_config = train_flags.resolve();
    if (*eval_cmd) {
      eval_config = eval_flags.resolve();
      eval_settings.cold_users = parse_cold_user_policy(cold_users);
      if (!(eval_settings.split_ratio > 0.0 && eval_settings.split_ratio < 1.0))
        throw std::invalid_argument("--split-ratio must be strictly between 0 and 1");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  const auto argv_record = args_without_program(argv_strings);
  try {
    if (*preprocess) {
      const auto start = Clock::now();
      const InteractionTable result = preprocess_table(load_edge_list(pre.input), pre);
      {
        auto file = open_output(pre.output);
        write_edge_list(file, result);
      }
      const TableStats s = table_stats(result);
      std::ostringstream summary;
      summary << "users " << s.users << "\nitems " << s.items << "\nedges " << s.edges
              << "\ndensity " << format_number(s.density) << '\n';
      {
        auto file = open_output(pre.output.string() + ".stats");
        file << summary.str();
      }
      out << summary.str();

      RunManifest m;
      m.command = "preprocess";
      m.argv = argv_record;
      m.config = {{"edge_type", to_string(pre.edge_type)},
                  {"threshold", pre.threshold.value_or(default_threshold(pre.edge_type))},
                  {"min_degree", pre.min_degree}};
      m.inputs = {{"edges", pre.input.string()}};
      m.outputs = {{"edges", pre.output.string()}, {"stats", pre.output.string() + ".stats"}};
      m.timings = {{"total_seconds", seconds_since(start)}};
      write_manifest(manifest_path_for(pre.output), m);
      return kOk;
    }

    if (*train_cmd) {
      const auto start = Clock::now();
      const BipartiteGraph graph = build_graph(load_canonical(train_input));
      const double load_seconds = seconds_since(start);
      const EmbeddingTriplet model = train(graph, train_config, progress_options(train_flags, err));
      const double train_seconds = seconds_since(start) - load_seconds;

      const auto keys = graph.vertex_keys();
      RunManifest m;
      m.outputs = {{"phi", train_output.string()}};
      {
        auto file = open_output(train_output);
        write_embeddings(file, model.phi, keys);
      }
      if (export_context) {
        auto uc = open_output(train_output.string() + ".uc");
        write_embeddings(uc, model.phi_uc, keys);
        auto ic = open_output(train_output.string() + ".ic");
        write_embeddings(ic, model.phi_ic, keys);
        m.outputs["phi_uc"] = train_output.string() + ".uc";
        m.outputs["phi_ic"] = train_output.string() + ".ic";
      }
      m.command = "train";
      m.argv = argv_record;
      m.config = config_json(train_config);
      m.config["total_samples"] = train_config.resolved_samples(graph.edge_count());
      m.inputs = {{"edges", train_input.string()}};
      m.seed = train_config.seed;
      m.timings = {{"load_seconds", load_seconds},
                   {"train_seconds", train_seconds},
                   {"total_seconds", seconds_since(start)}};
      write_manifest(manifest_path_for(train_output), m);
      return kOk;
    }

    if (*eval_cmd) {
      const auto start = Clock::now();
      const InteractionTable edges = load_canonical(eval_input);
      const EvalSummary summary = run_evaluation(edges, eval_config, eval_settings);

      std::ostringstream report;
      for (std::size_t r = 0; r < summary.runs.size(); ++r) {
        const auto& run = summary.runs[r];
        write_report_records(report, run.reports, run.split_seed);
        if (eval_settings.per_user) {
          for (const auto& rep : run.reports)
            for (const auto& u : rep.per_user)
              report << "user=" << u.user << " cutoff=" << rep.cutoff << " truth=" << u.truth_size
                     << " recall=" << format_number(u.recall)
                     << " ap=" << format_number(u.average_precision) << " split_seed=" << run.split_seed
                     << '\n';
        }
      }
      write_report_text(report, summary.mean);
      out << report.str();

      if (!eval_output.empty()) {
        {
          auto file = open_output(eval_output);
          file << report.str();
        }
        RunManifest m;
        m.command = "eval";
        m.argv = argv_record;
        m.config = config_json(eval_config);
        m.config["split_ratio"] = eval_settings.split_ratio;
        m.config["repeats"] = eval_settings.repeats;
        m.config["cutoffs"] = eval_settings.cutoffs;
        m.config["cold_users"] = to_string(eval_settings.cold_users);
        m.inputs = {{"edges", eval_input.string()}};
        m.outputs = {{"report", eval_output.string()}};
        m.seed = eval_config.seed;
        m.timings = {{"total_seconds", seconds_since(start)}};
        write_manifest(manifest_path_for(eval_output), m);
      }
      return kOk;
    }

    if (*rec_cmd) {
      const BipartiteGraph graph = build_graph(load_canonical(rec_input));
      std::ifstream file(rec_embeddings);
      if (!file) throw DataError("cannot open " + rec_embeddings.string());
      LoadedEmbeddings loaded = read_embeddings(file);
      if (loaded.keys != graph.vertex_keys())
        throw DataError("embedding rows do not match the vertices of " + rec_input.string());
      const auto user = graph.find(Side::user, rec_user);
      if (!user) throw DataError("unknown user: " + rec_user);
      EmbeddingTriplet model;
      model.phi = std::move(loaded.matrix);
      for (const auto& item : recommend_top_n(*user, model, graph, rec_top))
        out << graph.key(item.item) << '\t' << format_number(item.score) << '\n';
      return kOk;
    }

    if (*stats_cmd) {
      write_graph_stats(out, graph_stats(build_graph(load_canonical(stats_input))));
      return kOk;
    }
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace cse::cli
