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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "process_util.h"
#include "test_util.h"
#include "textbeam/candidates.h"
#include "textbeam/eval.h"
#include "textbeam/importance.h"
#include "textbeam/run_config.h"
#include "textbeam/search.h"

namespace textbeam {
namespace {

using ::textbeam::testing::MakeTinyInstance;
using ::textbeam::testing::ReadFileBytes;
using ::textbeam::testing::RunCommand;
using ::textbeam::testing::TinyConfig;
using ::textbeam::testing::TinyInstance;

const std::string kCli = TEXTBEAM_CLI;
const std::string kToy = std::string(TEXTBEAM_DATA_DIR) + "/toy";

std::string ScratchPath(const std::string& name) {
  return "/tmp/textbeam_acceptance_" + std::to_string(::getpid()) + "_" + name;
}

// Collects the first few failure messages of one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    std::string out;
    for (const std::string& n : notes_) out += "; " + n;
    return out;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

Text T(std::vector<std::string> tokens) { return Text{tokens, std::nullopt}; }

std::vector<CandidateSet> SetsFor(TinyInstance& instance,
                                  const AttackConfig& config) {
  return RankedCandidateSets(instance.text, instance.gold, instance.model,
                             instance.providers(), config);
}

void OracleEquivalence(Check& check, std::string& summary) {
  std::mt19937_64 rng(20260101);
  const auto start = std::chrono::steady_clock::now();
  const int instances = 400;
  int successes = 0;
  for (int i = 0; i < instances; ++i) {
    TinyInstance instance = MakeTinyInstance(rng, i % 2 == 0 ? 2 : 3);
    const AttackConfig config = TinyConfig(kUnboundedBeam);
    const AttackResult beam =
        BeamAttack(instance.text, instance.gold, instance.model,
                   instance.providers(), config);
    const AttackResult oracle =
        ExhaustiveAttack(instance.text, instance.gold, instance.model,
                         SetsFor(instance, config), instance.encoder, config);
    check.Expect(beam.status == oracle.status,
                 "status mismatch on instance " + std::to_string(i));
    successes += oracle.status == AttackStatus::kSuccess;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.Expect(seconds < 60.0, "runtime " + std::to_string(seconds) + "s");
  std::ostringstream s;
  s << instances << " instances, " << successes << " oracle successes, "
    << std::fixed;
  s.precision(2);
  s << seconds << "s";
  summary = s.str();
}

void GreedyIdentity(Check& check, std::string& summary) {
  std::mt19937_64 rng(20260102);
  for (int i = 0; i < 100; ++i) {
    TinyInstance instance = MakeTinyInstance(rng, i % 2 == 0 ? 2 : 3, 5, 3);
    const AttackResult greedy =
        GreedyAttack(instance.text, instance.gold, instance.model,
                     instance.providers(), TinyConfig(10));
    const AttackResult k1 =
        BeamAttack(instance.text, instance.gold, instance.model,
                   instance.providers(), TinyConfig(1));
    check.Expect(greedy == k1,
                 "field mismatch on instance " + std::to_string(i));
  }
  summary = "100 instances compared field by field";
}

void BeamBenefit(Check& check, std::string& summary) {
  TinyInstance instance{
      T({"w0", "w1"}),
      0,
      LexiconModel::Multiclass({{"w0", {1, 0, 0}},
                                {"w1", {1, 0, 0}},
                                {"deadend", {0.5, -2, 1.2}},
                                {"detour", {0.5, 0.8, -2}},
                                {"finish", {1, 1.2, -1}}},
                               {0, 0, 0}),
      TableMaskedLm({{"w0", {"deadend", "detour"}}, {"w1", {"finish"}}}),
      UniformPosTagger(),
      HashedBowEncoder(),
      StopwordList()};
  const AttackResult k1 = BeamAttack(instance.text, 0, instance.model,
                                     instance.providers(), TinyConfig(1));
  const AttackResult k2 = BeamAttack(instance.text, 0, instance.model,
                                     instance.providers(), TinyConfig(2));
  const AttackResult oracle = ExhaustiveAttack(instance.text, 0, instance.model,
                                               SetsFor(instance, TinyConfig(1)),
                                               instance.encoder, TinyConfig(1));
  check.Expect(k1.status == AttackStatus::kFailure, "K=1 did not fail");
  check.Expect(k2.status == AttackStatus::kSuccess, "K=2 did not succeed");
  check.Expect(oracle.status == AttackStatus::kSuccess,
               "oracle finds no success");
  summary = "K=1 " + std::string(AttackStatusName(k1.status)) + ", K=2 " +
            std::string(AttackStatusName(k2.status));
}

void ImportanceCorrectness(Check& check, std::string& summary) {
  std::mt19937_64 rng(20260104);
  std::uniform_real_distribution<double> weight(-3.0, 3.0);
  double worst = 0.0;
  for (std::size_t classes : {2u, 3u}) {
    std::unordered_map<std::string, std::vector<double>> weights;
    std::vector<std::string> vocab;
    for (int i = 0; i < 15; ++i) {
      vocab.push_back("v" + std::to_string(i));
      std::vector<double> row(classes);
      for (double& x : row) x = weight(rng);
      weights[vocab.back()] = row;
    }
    LexiconModel model =
        LexiconModel::Multiclass(weights, std::vector<double>(classes, 0.0));
    for (int trial = 0; trial < 25; ++trial) {
      Text text;
      for (std::size_t k = 1 + rng() % 10; k > 0; --k) {
        text.tokens.push_back(vocab[rng() % vocab.size()]);
      }
      const std::size_t y = rng() % classes;
      const std::vector<ImportanceScore> scores =
          ComputeImportance(text, model, y);
      const ProbVector base = model.Score(text);
      for (std::size_t i = 0; i < text.size(); ++i) {
        Text masked = text;
        masked.tokens[i] = "[oov]";
        const ProbVector p = model.Score(masked);
        const std::size_t other = static_cast<std::size_t>(
            std::max_element(p.begin(), p.end()) - p.begin());
        double want = base[y] - p[y];
        if (other != y) want += p[other] - base[other];
        worst = std::max(worst, std::fabs(scores[i].score - want));
      }
    }
  }
  check.Expect(worst <= 1e-9, "max deviation " + std::to_string(worst));

  LexiconModel sentiment =
      LexiconModel::Binary({{"good", 2.0}, {"movie", 0.5}});
  const auto good_movie = ComputeImportance(T({"good", "movie"}), sentiment, 0);
  LexiconModel negation = LexiconModel::Binary({{"not", -2.0}, {"good", 1.0}});
  const auto not_good = ComputeImportance(T({"not", "good"}), negation, 1);
  check.Expect(std::fabs(good_movie[0].score - 0.3016) <= 1e-4, "I(good)");
  check.Expect(std::fabs(good_movie[1].score - 0.0433) <= 1e-4, "I(movie)");
  check.Expect(std::fabs(not_good[0].score - 0.9242) <= 1e-4, "I(not)");
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer),
                "50 texts, max deviation %.2e; hand values %.4f %.4f %.4f",
                worst, good_movie[0].score, good_movie[1].score,
                not_good[0].score);
  summary = buffer;
}

// Random vocabulary with embeddings, POS tags and an MLM table.
struct RandomSpaces {
  std::vector<std::string> words;
  std::optional<EmbeddingSpace> space;
  TableMaskedLm mlm;
  LexiconPosTagger tagger;
  HashedBowEncoder encoder;

  explicit RandomSpaces(std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> matrix;
    std::unordered_map<std::string, PosTag> tags;
    const PosTag kTags[] = {PosTag::kNoun, PosTag::kVerb, PosTag::kAdj};
    for (int i = 0; i < 80; ++i) {
      words.push_back("t" + std::to_string(i));
      tags[words.back()] = kTags[rng() % 3];
      for (int k = 0; k < 6; ++k) matrix.push_back(dist(rng));
    }
    space.emplace(words, matrix, 6);
    std::unordered_map<std::string, std::vector<std::string>> table;
    for (const std::string& w : words) {
      for (int k = 0; k < 10; ++k) table[w].push_back(words[rng() % 80]);
    }
    mlm = TableMaskedLm(table);
    tagger = LexiconPosTagger(tags);
  }

  Text RandomText(std::mt19937_64& rng) const {
    Text text;
    for (std::size_t k = 2 + rng() % 5; k > 0; --k) {
      text.tokens.push_back(words[rng() % words.size()]);
    }
    return text;
  }
};

void FilterGuarantees(Check& check, std::string& summary) {
  std::mt19937_64 rng(20260105);
  std::size_t sets = 0;
  std::size_t survivors = 0;
  std::size_t removed_by_raise = 0;
  while (sets < 1000) {
    RandomSpaces spaces(rng);
    const CandidateSources sources{&*spaces.space, &spaces.mlm, &spaces.tagger,
                                   &spaces.encoder};
    for (int t = 0; t < 50; ++t, ++sets) {
      const Text text = spaces.RandomText(rng);
      const std::size_t pos = rng() % text.size();
      const std::size_t n = 1 + rng() % 12;
      const CandidateSet low = BuildCandidateSet(text, pos, sources, {n, 0.3});
      const CandidateSet high = BuildCandidateSet(text, pos, sources, {n, 0.7});
      check.Expect(high.size() <= low.size(), "raising L grew a set");
      removed_by_raise += low.size() - std::min(low.size(), high.size());
      for (const auto& [set, threshold] :
           {std::pair{&low, 0.3}, std::pair{&high, 0.7}}) {
        for (const Candidate& c : set->candidates) {
          ++survivors;
          const Text variant = Substitute(text, pos, c.word);
          const double sim = SentenceSimilarity(spaces.encoder, text, variant);
          check.Expect(sim > threshold, "similarity " + std::to_string(sim));
          check.Expect(
              spaces.tagger.Tag(variant, pos) == spaces.tagger.Tag(text, pos),
              "POS mismatch for " + c.word);
          check.Expect(!EqualsIgnoreCase(c.word, text.tokens[pos]),
                       "original word kept");
        }
      }
    }
  }
  summary = std::to_string(sets) + " sets, " + std::to_string(survivors) +
            " survivors checked, " + std::to_string(removed_by_raise) +
            " removed by raising L";
}

void MixedSuperset(Check& check, std::string& summary) {
  std::mt19937_64 rng(20260106);
  UniformPosTagger uniform;
  std::size_t total = 0;
  std::size_t positions = 0;
  while (positions < 100) {
    RandomSpaces spaces(rng);
    const CandidateSources sources{&*spaces.space, &spaces.mlm, &uniform,
                                   &spaces.encoder};
    for (int t = 0; t < 20; ++t, ++positions) {
      const Text text = spaces.RandomText(rng);
      const std::size_t pos = rng() % text.size();
      const std::size_t n = 1 + rng() % 10;
      auto words = [&](SpaceMode mode) {
        std::set<std::string> out;
        for (const Candidate& c :
             BuildCandidateSet(text, pos, sources, {n, -1.0, mode})
                 .candidates) {
          out.insert(c.word);
        }
        return out;
      };
      std::set<std::string> expected = words(SpaceMode::kEmbedding);
      const std::set<std::string> mlm = words(SpaceMode::kMlm);
      expected.insert(mlm.begin(), mlm.end());
      const std::set<std::string> mixed = words(SpaceMode::kMixed);
      check.Expect(mixed == expected,
                   "mismatch at position " + std::to_string(positions));
      total += mixed.size();
    }
  }
  summary = std::to_string(positions) + " positions, " + std::to_string(total) +
            " mixed candidates";
}

// Every candidate raises the gold score, so the search runs to completion.
std::size_t CraftedQueryRun(std::size_t beam_size,
                            const std::vector<std::size_t>& branching,
                            std::size_t& want) {
  std::unordered_map<std::string, double> weights;
  std::unordered_map<std::string, std::vector<std::string>> table;
  Text text;
  for (std::size_t i = 0; i < branching.size(); ++i) {
    const std::string word = "p" + std::to_string(i);
    text.tokens.push_back(word);
    weights[word] = 0.1 * static_cast<double>(i + 1);
    for (std::size_t k = 0; k < branching[i]; ++k) {
      const std::string cand = word + "c" + std::to_string(k);
      weights[cand] = 1.0 + 0.01 * static_cast<double>(k);
      table[word].push_back(cand);
    }
  }
  TinyInstance instance{text,
                        0,
                        LexiconModel::Binary(weights),
                        TableMaskedLm(table),
                        UniformPosTagger(),
                        HashedBowEncoder(),
                        StopwordList()};
  AttackConfig config = TinyConfig(beam_size);
  config.top_n = 10;
  const AttackResult r =
      BeamAttack(text, 0, instance.model, instance.providers(), config);
  // Ranked order is by importance, not position; the closed form only needs
  // the branching sequence in that order.
  std::vector<std::size_t> ordered;
  for (const CandidateSet& s : SetsFor(instance, config)) {
    ordered.push_back(branching[s.position]);
  }
  want = 1 + text.size();
  std::size_t beam = 1;
  for (std::size_t c : ordered) {
    want += beam * c;
    beam = std::min(beam_size, beam * (1 + c));
  }
  return r.status == AttackStatus::kFailure ? r.queries : 0;
}

void QueryAccounting(Check& check, std::string& summary) {
  const std::vector<std::vector<std::size_t>> shapes{
      {3, 2, 4, 1}, {1, 1, 1}, {5, 0, 3, 2, 2}, {2}};
  std::size_t runs = 0;
  for (const auto& shape : shapes) {
    for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                          std::size_t{10}, kUnboundedBeam}) {
      std::size_t want = 0;
      const std::size_t got = CraftedQueryRun(k, shape, want);
      check.Expect(got == want, "got " + std::to_string(got) + " want " +
                                    std::to_string(want));
      ++runs;
    }
  }
  summary = std::to_string(runs) + " crafted runs matched exactly";
}

void CheckSoundness(Check& check, const AttackResult& r,
                    const TinyInstance& instance, std::size_t& successes) {
  if (r.status != AttackStatus::kSuccess) return;
  ++successes;
  const Text rebuilt = ApplySubstitutions(r.original, r.substitutions);
  const std::size_t pred = Argmax(instance.model.Score(rebuilt));
  check.Expect(pred != r.gold_label && r.adv_pred == pred,
               "re-scored prediction disagrees");
  check.Expect(r.adversarial && r.adversarial->tokens == rebuilt.tokens,
               "adversarial text disagrees with substitutions");
  check.Expect(r.wsr == static_cast<double>(r.substitutions.size()) /
                            static_cast<double>(r.original.size()),
               "wsr");
  check.Expect(
      r.similarity == SentenceSimilarity(instance.encoder, r.original, rebuilt),
      "similarity");
}

void SuccessSoundness(Check& check, std::string& summary) {
  std::mt19937_64 rng(20260108);
  std::size_t successes = 0;
  for (int i = 0; i < 300; ++i) {
    TinyInstance instance = MakeTinyInstance(rng, 2 + i % 2, 6, 3);
    const AttackResult r =
        BeamAttack(instance.text, instance.gold, instance.model,
                   instance.providers(), TinyConfig(1 + i % 4));
    CheckSoundness(check, r, instance, successes);
  }
  check.Expect(successes > 0, "no successes to check");
  summary = std::to_string(successes) + " successes re-scored";
}

void EndToEndCli(Check& check, std::string& summary) {
  const std::string out1 = ScratchPath("run1.jsonl");
  const std::string out2 = ScratchPath("run2.jsonl");
  auto attack = [&](const std::string& out) {
    return RunCommand(kCli + " attack --config " + kToy +
                      "/attack.conf --seed 0 --out " + out);
  };
  const auto run1 = attack(out1);
  const auto run2 = attack(out2);
  check.Expect(run1.exit_code == 0 && run2.exit_code == 0, "non-zero exit");
  std::vector<AttackResult> results;
  try {
    results = ReadResults(out1);
  } catch (const std::exception& e) {
    check.Expect(false, std::string("unparseable results: ") + e.what());
  }
  check.Expect(results.size() == 50,
               std::to_string(results.size()) + " records");
  const auto report = RunCommand(kCli + " report --results " + out1);
  check.Expect(report.exit_code == 0 && report.out == run1.out,
               "report differs from the attack summary");
  check.Expect(ReadFileBytes(out1) == ReadFileBytes(out2),
               "reruns are not byte-identical");
  const MetricsReport m = FoldMetrics(results);
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), "%zu records, asr %.3f, %zu skipped",
                results.size(), m.asr.value_or(0.0), m.skipped);
  summary = buffer;
}

void TransferSanity(Check& check, std::string& summary) {
  const std::string results_path = ScratchPath("run1.jsonl");
  std::vector<AttackResult> results;
  try {
    results = ReadResults(results_path);
  } catch (const std::exception& e) {
    check.Expect(false, std::string("no results: ") + e.what());
    summary = "no results";
    return;
  }
  const RunConfig config = RunConfig::LoadFile(kToy + "/attack.conf");
  const LabelSet labels = LabelSet::Parse(config.labels);
  std::unique_ptr<VictimModel> victim = MakeVictim(config.victim, labels);
  double accuracy = -1.0;
  try {
    accuracy = TransferEvaluate(results, *victim);
  } catch (const std::exception& e) {
    check.Expect(false, e.what());
  }
  check.Expect(accuracy == 0.0, "accuracy " + std::to_string(accuracy));

  const std::string exported = ScratchPath("adv.jsonl");
  const std::size_t written = ExportAdvTrain(results, exported);
  const Dataset back = Dataset::Load(exported, labels);
  std::vector<const AttackResult*> successes;
  for (const AttackResult& r : results) {
    if (r.status == AttackStatus::kSuccess) successes.push_back(&r);
  }
  check.Expect(
      written == successes.size() && back.examples.size() == successes.size(),
      "export count mismatch");
  for (std::size_t i = 0; i < std::min(back.examples.size(), successes.size());
       ++i) {
    check.Expect(Tokenize(back.examples[i].text).tokens ==
                         successes[i]->adversarial->tokens &&
                     back.examples[i].label == successes[i]->gold_label,
                 "record " + std::to_string(i) + " changed");
  }
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer),
                "transfer accuracy %.1f, %zu records exported", accuracy,
                written);
  summary = buffer;
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Check&, std::string&)> run;
};

}  // namespace
}  // namespace textbeam

int main() {
  using textbeam::Check;
  const std::vector<textbeam::Criterion> criteria{
      {1, "oracle equivalence", textbeam::OracleEquivalence},
      {2, "greedy identity", textbeam::GreedyIdentity},
      {3, "beam benefit", textbeam::BeamBenefit},
      {4, "importance scores", textbeam::ImportanceCorrectness},
      {5, "filter guarantees", textbeam::FilterGuarantees},
      {6, "mixed-space union", textbeam::MixedSuperset},
      {7, "query accounting", textbeam::QueryAccounting},
      {8, "success soundness", textbeam::SuccessSoundness},
      {9, "end-to-end cli", textbeam::EndToEndCli},
      {10, "transfer and export", textbeam::TransferSanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    std::string summary;
    try {
      c.run(check, summary);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok() ? "PASS" : "FAIL") << " criterion " << c.id << " ("
              << c.name << "): " << summary << check.detail() << std::endl;
    failed += check.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
