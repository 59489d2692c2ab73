// Copyright 2026 The textbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: attack, eval-transfer, export-advtrain, report.
//
// Exit codes: 0 done (failed attacks included), 1 internal error,
// 2 configuration error or missing file, 3 victim/provider protocol or
// transport failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "textbeam/errors.h"
#include "textbeam/eval.h"
#include "textbeam/run_config.h"
#include "textbeam/victim.h"

namespace {

using namespace textbeam;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTransport = 3;

struct AttackFlags {
  std::optional<std::string> config;
  std::optional<std::string> beam_size;
  std::optional<std::string> top_n;
  std::optional<std::string> sim_threshold;
  std::optional<std::string> wsr_threshold;
  std::optional<std::string> space_mode;
  std::optional<std::string> victim;
  std::optional<std::string> dataset;
  std::optional<std::string> out;
  std::optional<std::string> workers;
  std::optional<std::string> seed;
};

int RunAttack(const AttackFlags& flags) {
  RunConfig config =
      flags.config ? RunConfig::LoadFile(*flags.config) : RunConfig{};
  auto apply = [&](const char* key, const std::optional<std::string>& v) {
    if (v) config.Set(key, *v);
  };
  apply("beam_size", flags.beam_size);
  apply("top_n", flags.top_n);
  apply("sim_threshold", flags.sim_threshold);
  apply("wsr_threshold", flags.wsr_threshold);
  apply("space_mode", flags.space_mode);
  apply("victim", flags.victim);
  apply("dataset", flags.dataset);
  apply("out", flags.out);
  apply("workers", flags.workers);
  apply("seed", flags.seed);
  config.Check();

  const LabelSet labels = LabelSet::Parse(config.labels);
  const Dataset dataset = SelectExamples(Dataset::Load(config.dataset, labels),
                                         config.sample, config.seed);
  LoadedProviders providers(config);
  std::unique_ptr<VictimModel> victim = MakeVictim(config.victim, labels);

  const Evaluation eval = Evaluate(dataset, *victim, providers.view(),
                                   config.attack, config.workers);
  WriteResults(eval.results, config.out);
  std::cout << FormatSummary(eval.report);
  if (eval.report.errored > 0) {
    for (const AttackResult& r : eval.results) {
      if (r.status == AttackStatus::kErrored) {
        std::cerr << "error: " << r.error << "\n";
        break;
      }
    }
    return kExitTransport;
  }
  return kExitOk;
}

int RunReport(const std::string& results_path) {
  const std::vector<AttackResult> results = ReadResults(results_path);
  std::cout << FormatSummary(FoldMetrics(results));
  return kExitOk;
}

int RunTransfer(const std::string& results_path, const std::string& victim,
                const std::string& labels) {
  const std::vector<AttackResult> results = ReadResults(results_path);
  std::unique_ptr<VictimModel> other =
      MakeVictim(victim, LabelSet::Parse(labels));
  const double accuracy = TransferEvaluate(results, *other);
  std::cout << "transfer_accuracy: " << accuracy << "\n";
  return kExitOk;
}

int RunExport(const std::string& results_path, const std::string& out) {
  const std::vector<AttackResult> results = ReadResults(results_path);
  std::cout << "exported: " << ExportAdvTrain(results, out) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-level black-box adversarial attacks on text classifiers"};
  app.require_subcommand(1);

  AttackFlags flags;
  CLI::App* attack = app.add_subcommand("attack", "Attack a dataset");
  attack->add_option("--config", flags.config, "key=value config file");
  attack->add_option("--beam-size", flags.beam_size,
                     "Beam size K (integer or 'unbounded')");
  attack->add_option("--top-n", flags.top_n, "Candidates per semantic space");
  attack->add_option("--sim-threshold", flags.sim_threshold,
                     "Similarity threshold L");
  attack->add_option("--wsr-threshold", flags.wsr_threshold,
                     "WSR bound sigma (1.0 disables)");
  attack->add_option("--space-mode", flags.space_mode,
                     "embedding | mlm | mixed");
  attack->add_option("--victim", flags.victim,
                     "lexicon:PATH or external:COMMAND");
  attack->add_option("--dataset", flags.dataset, "JSONL dataset");
  attack->add_option("--out", flags.out, "Results file");
  attack->add_option("--workers", flags.workers, "Worker threads");
  attack->add_option("--seed", flags.seed, "Sampling seed");

  std::string results_path;
  std::string other_victim;
  std::string labels = "pos,neg";
  CLI::App* transfer = app.add_subcommand(
      "eval-transfer", "Accuracy of a second victim on adversarial examples");
  transfer->add_option("--results", results_path)->required();
  transfer->add_option("--victim", other_victim)->required();
  transfer->add_option("--labels", labels, "Comma-separated label names");

  std::string export_out;
  CLI::App* exporter = app.add_subcommand(
      "export-advtrain", "Write successful examples as training records");
  exporter->add_option("--results", results_path)->required();
  exporter->add_option("--out", export_out)->required();

  CLI::App* report =
      app.add_subcommand("report", "Re-derive metrics from a results file");
  report->add_option("--results", results_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*attack) return RunAttack(flags);
    if (*transfer) return RunTransfer(results_path, other_victim, labels);
    if (*exporter) return RunExport(results_path, export_out);
    if (*report) return RunReport(results_path);
  } catch (const MissingFileError& e) {
    std::cerr << "error: missing file: " << e.path() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TransportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
