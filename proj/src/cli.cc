// Copyright 2026 The CIE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cie/cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cie/class_explainer.h"
#include "cie/corpus.h"
#include "cie/error.h"
#include "cie/evaluation.h"
#include "cie/instance_explainer.h"
#include "cie/itemset_store.h"
#include "cie/lexicon.h"
#include "cie/miner.h"
#include "cie/report.h"

namespace cie {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string dataset;
  std::string mode = "pre-annotated";
  std::string lexicon;
  int window = Lexicon::kDefaultWindow;

  MiningParams mining;
  ObjectiveConfig objective;
  std::vector<double> weights{1, 1, 1, 1, 1, 1};
  bool raw_rewards = false;

  std::vector<int> alpha;
  std::vector<int> beta;
  std::vector<int> gamma;
  double lambda = 1.0;

  std::vector<std::string> baselines;
  int n_words = 10;
  std::uint64_t seed = 42;

  std::vector<double> tune_grid;
  int folds = 3;

  std::string out = "cie_out";
  std::string store;
  bool mine_first = false;
  int jobs = 1;

  // explain scope
  std::string instance;
  std::string class_name;
  bool global = false;

  // report
  std::string report;
};

std::string StorePath(const RunConfig& cfg) {
  return cfg.store.empty() ? (fs::path(cfg.out) / "itemsets.jsonl").string()
                           : cfg.store;
}

void EnsureOutDir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot create output directory '" +
                                    cfg.out + "': " + ec.message());
  }
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw Error(ErrorKind::kIo, "write failed for '" + path.string() +
                                          "'");
}

std::string SafeFileName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  return out;
}

void Finalize(RunConfig& cfg) {
  if (cfg.weights.size() != 6) {
    throw Error(ErrorKind::kInvalidArgument,
                "--weights takes exactly six values");
  }
  std::copy(cfg.weights.begin(), cfg.weights.end(),
            cfg.objective.weights.begin());
  cfg.objective.normalize_rewards = !cfg.raw_rewards;
  cfg.mining.Validate();
  cfg.objective.Validate(cfg.mining.max_k);
  if (cfg.jobs < 1) {
    throw Error(ErrorKind::kInvalidArgument, "--jobs must be >= 1");
  }
}

Dataset LoadConfiguredDataset(const RunConfig& cfg, std::ostream& err) {
  if (cfg.dataset.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "--dataset is required");
  }
  LoadOptions options;
  options.mode = ParseAnnotationMode(cfg.mode);
  std::optional<Lexicon> lexicon;
  if (options.mode == AnnotationMode::kLexicon) {
    if (cfg.lexicon.empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "lexicon mode requires --lexicon");
    }
    lexicon = Lexicon::LoadFile(cfg.lexicon, cfg.window);
    options.lexicon = &*lexicon;
  }
  Dataset dataset = LoadDatasetFile(cfg.dataset, options);
  err << "loaded " << dataset.size() << " samples, "
      << dataset.num_classes() << " classes, " << dataset.num_concepts()
      << " concepts\n";
  return dataset;
}

MinedItemsets MineAndStore(const RunConfig& cfg, const Dataset& dataset,
                           std::ostream& err) {
  EnsureOutDir(cfg);
  MinedItemsets mined = MineAll(dataset, cfg.mining, cfg.jobs);
  if (mined.total() == 0) {
    err << "warning: no confident itemsets at min_conf " << cfg.mining.min_conf
        << '\n';
  }
  WriteItemsetStoreFile(StorePath(cfg), mined, dataset, cfg.mining);
  std::ostringstream summary;
  WriteMiningSummary(summary, mined, dataset);
  WriteFile(fs::path(cfg.out) / "mining_summary.txt", summary.str());
  err << "wrote " << mined.total() << " itemsets to " << StorePath(cfg)
      << '\n';
  return mined;
}

MinedItemsets ObtainItemsets(const RunConfig& cfg, const Dataset& dataset,
                             std::ostream& err) {
  if (cfg.mine_first) return MineAndStore(cfg, dataset, err);
  return ReadItemsetStoreFile(StorePath(cfg), dataset);
}

Json RunHeader(const RunConfig& cfg) {
  Json header;
  header["dataset"] = cfg.dataset;
  header["mode"] = cfg.mode;
  header["min_conf"] = cfg.mining.min_conf;
  header["max_k"] = cfg.mining.max_k;
  header["min_support"] = cfg.mining.min_support;
  header["theta"] = {cfg.objective.theta1, cfg.objective.theta2,
                     cfg.objective.theta3};
  header["delta"] = cfg.objective.delta;
  header["weights"] = cfg.objective.weights;
  header["normalized_rewards"] = cfg.objective.normalize_rewards;
  header["lambda"] = cfg.lambda;
  header["seed"] = cfg.seed;
  return header;
}

int CmdMine(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Dataset dataset = LoadConfiguredDataset(cfg, err);
  const MinedItemsets mined = MineAndStore(cfg, dataset, err);
  WriteMiningSummary(out, mined, dataset);
  return 0;
}

int CmdExplain(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int scopes = (cfg.instance.empty() ? 0 : 1) +
                     (cfg.class_name.empty() ? 0 : 1) + (cfg.global ? 1 : 0);
  if (scopes != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "explain needs exactly one of --instance, --class, --global");
  }
  const Dataset dataset = LoadConfiguredDataset(cfg, err);
  const MinedItemsets mined = ObtainItemsets(cfg, dataset, err);
  EnsureOutDir(cfg);

  Json record;
  fs::path path;
  if (!cfg.instance.empty()) {
    const auto index = dataset.FindSample(cfg.instance);
    if (!index) {
      throw Error(ErrorKind::kLookup, "unknown sample '" + cfg.instance + "'");
    }
    record = InstanceRecord(ExplainInstance(dataset.sample(*index), mined),
                            dataset);
    path = fs::path(cfg.out) / ("instance_" + SafeFileName(cfg.instance) +
                                ".json");
  } else if (!cfg.class_name.empty()) {
    const auto class_id = dataset.FindClass(cfg.class_name);
    if (!class_id) {
      throw Error(ErrorKind::kLookup, "unknown class '" + cfg.class_name + "'");
    }
    record = ClassRecord(LocalSearch(mined.ForClass(*class_id), *class_id,
                                     dataset, mined, cfg.objective),
                         dataset);
    path = fs::path(cfg.out) / ("class_" + SafeFileName(cfg.class_name) +
                                ".json");
  } else {
    const int units =
        cfg.gamma.empty()
            ? 10
            : *std::max_element(cfg.gamma.begin(), cfg.gamma.end());
    record = GlobalRecord(
        SelectGlobalExplanation(mined, dataset, units, cfg.lambda), dataset);
    path = fs::path(cfg.out) / "global.json";
  }
  const std::string text = record.dump(2) + "\n";
  WriteFile(path, text);
  out << text;
  return 0;
}

int CmdEval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Dataset dataset = LoadConfiguredDataset(cfg, err);
  const MinedItemsets mined = ObtainItemsets(cfg, dataset, err);
  EnsureOutDir(cfg);

  EvalOptions options;
  options.objective = cfg.objective;
  options.lambda = cfg.lambda;
  options.seed = cfg.seed;
  options.jobs = cfg.jobs;
  auto add_sweep = [&](SweepAxis axis, const std::vector<int>& budgets) {
    if (budgets.empty()) return;
    SweepConfig sweep{axis, budgets};
    sweep.Validate();
    options.sweeps.push_back(sweep);
  };
  add_sweep(SweepAxis::kAlpha, cfg.alpha);
  add_sweep(SweepAxis::kBeta, cfg.beta);
  add_sweep(SweepAxis::kGamma, cfg.gamma);
  for (const std::string& name : cfg.baselines) {
    BaselineConfig baseline;
    baseline.kind = ParseBaselineKind(name);
    baseline.n_words = cfg.n_words;
    baseline.seed = cfg.seed;
    baseline.Validate();
    options.baselines.push_back(baseline);
  }

  const EvalReport report = Evaluate(dataset, mined, options);
  Json record = ReportRecord(report, dataset, RunHeader(cfg));
  if (!cfg.tune_grid.empty()) {
    const WeightSearchResult search =
        GridSearchWeights(dataset, cfg.mining, cfg.objective, cfg.tune_grid,
                          cfg.folds, cfg.seed, cfg.jobs);
    Json tuning;
    tuning["folds"] = cfg.folds;
    tuning["best_weights"] = search.best.weights;
    tuning["best_score"] = search.best.score;
    tuning["trials"] = search.trials.size();
    record["weight_search"] = tuning;
  }

  const fs::path dir(cfg.out);
  WriteFile(dir / "report.json", record.dump(2) + "\n");
  if (!report.curves.empty()) {
    std::ostringstream csv;
    WriteCurvesCsv(csv, report.curves);
    WriteFile(dir / "curves.csv", csv.str());
  }
  std::ostringstream summary;
  WriteSummary(summary, record);
  WriteFile(dir / "report.txt", summary.str());
  out << summary.str();
  return 0;
}

int CmdReport(const RunConfig& cfg, std::ostream& out) {
  const std::string path = cfg.report.empty()
                               ? (fs::path(cfg.out) / "report.json").string()
                               : cfg.report;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open report '" + path + "'");
  Json record;
  try {
    record = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kParse, path + ": " + e.what());
  }
  WriteSummary(out, record);
  return 0;
}

void AddOptions(CLI::App& app, RunConfig& cfg) {
  app.add_option("--dataset", cfg.dataset, "Dataset file (JSON lines)");
  app.add_option("--mode", cfg.mode, "Concept annotation mode")
      ->check(CLI::IsMember({"pre-annotated", "lexicon", "token-fallback"}));
  app.add_option("--lexicon", cfg.lexicon, "Lexicon TSV for lexicon mode");
  app.add_option("--window", cfg.window, "Longest lexicon match in tokens");
  app.add_option("--min-conf", cfg.mining.min_conf, "Confidence threshold");
  app.add_option("--max-k", cfg.mining.max_k, "Largest itemset length");
  app.add_option("--min-support", cfg.mining.min_support,
                 "Minimum samples containing an itemset");
  app.add_option("--theta1", cfg.objective.theta1, "Max itemsets per class");
  app.add_option("--theta2", cfg.objective.theta2, "Max concepts per class");
  app.add_option("--theta3", cfg.objective.theta3, "Max itemset length");
  app.add_option("--delta", cfg.objective.delta, "Local-search improvement");
  app.add_option("--weights", cfg.weights, "Six objective weights")
      ->delimiter(',')
      ->expected(6);
  app.add_flag("--raw-rewards", cfg.raw_rewards,
               "Use unnormalized reward functions");
  app.add_option("--alpha", cfg.alpha, "Itemset-cap sweep budgets")
      ->delimiter(',');
  app.add_option("--beta", cfg.beta, "Class-explanation size budgets")
      ->delimiter(',');
  app.add_option("--gamma", cfg.gamma, "Global-explanation unit budgets")
      ->delimiter(',');
  app.add_option("--lambda", cfg.lambda, "Global conflict penalty");
  app.add_option("--baseline", cfg.baselines, "Baselines: random, greedy")
      ->delimiter(',');
  app.add_option("--n-words", cfg.n_words, "Words per class for baselines");
  app.add_option("--seed", cfg.seed, "Seed for every random draw");
  app.add_option("--tune-grid", cfg.tune_grid,
                 "Weight values for a cross-validated grid search")
      ->delimiter(',');
  app.add_option("--folds", cfg.folds, "Folds for --tune-grid");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--store", cfg.store,
                 "Itemset store path (default <out>/itemsets.jsonl)");
  app.add_flag("--mine-first", cfg.mine_first,
               "Mine before explaining or evaluating");
  app.add_option("--jobs", cfg.jobs, "Worker threads");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Confident-itemset explanations for black-box text classifiers",
               "cie"};
  app.set_config("--config", "", "Configuration file (TOML/INI)")
      ->envname("CIE_CONFIG");
  app.require_subcommand(1);
  app.fallthrough();
  AddOptions(app, cfg);

  CLI::App* mine = app.add_subcommand("mine", "Mine confident itemsets");
  CLI::App* explain =
      app.add_subcommand("explain", "Explain an instance, a class, or all");
  explain->add_option("--instance", cfg.instance, "Sample id");
  explain->add_option("--class", cfg.class_name, "Class name");
  explain->add_flag("--global", cfg.global, "Global explanation");
  CLI::App* eval = app.add_subcommand("eval", "Run the evaluation protocol");
  CLI::App* report = app.add_subcommand("report", "Render a saved report");
  report->add_option("--report", cfg.report,
                     "Report file (default <out>/report.json)");
  for (CLI::App* sub : {mine, explain, eval, report}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    Finalize(cfg);
    if (mine->parsed()) return CmdMine(cfg, out, err);
    if (explain->parsed()) return CmdExplain(cfg, out, err);
    if (eval->parsed()) return CmdEval(cfg, out, err);
    if (report->parsed()) return CmdReport(cfg, out);
  } catch (const Error& e) {
    err << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cie
