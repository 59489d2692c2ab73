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

#include "textbeam/eval.h"

#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"
#include "textbeam/errors.h"
#include "textbeam/line_channel.h"

namespace textbeam {
namespace {

Text T(std::vector<std::string> tokens) { return Text{tokens, std::nullopt}; }

std::string WriteTempFile(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

AttackResult Success(double wsr, double sim, std::size_t queries) {
  AttackResult r;
  r.status = AttackStatus::kSuccess;
  r.wsr = wsr;
  r.similarity = sim;
  r.queries = queries;
  return r;
}

AttackResult WithStatus(AttackStatus status, std::size_t queries) {
  AttackResult r;
  r.status = status;
  r.queries = queries;
  return r;
}

TEST(FoldMetricsTest, Examples) {
  const std::vector<AttackResult> results{
      Success(0.2, 0.9, 10), Success(0.4, 0.7, 20),
      WithStatus(AttackStatus::kFailure, 30),
      WithStatus(AttackStatus::kSkipped, 1)};
  const MetricsReport m = FoldMetrics(results);
  EXPECT_EQ(m.total, 4u);
  EXPECT_EQ(m.attacked, 3u);
  EXPECT_EQ(m.skipped, 1u);
  EXPECT_EQ(m.successes, 2u);
  EXPECT_NEAR(*m.asr, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(*m.mean_wsr, 0.3, 1e-15);
  EXPECT_NEAR(*m.mean_sim, 0.8, 1e-15);
  EXPECT_NEAR(m.mean_queries, 20.0, 1e-15);
}

TEST(FoldMetricsTest, NoSuccessesLeavesAveragesUndefined) {
  const std::vector<AttackResult> results{
      WithStatus(AttackStatus::kFailure, 5),
      WithStatus(AttackStatus::kErrored, 0)};
  const MetricsReport m = FoldMetrics(results);
  EXPECT_EQ(*m.asr, 0.0);
  EXPECT_FALSE(m.mean_wsr.has_value());
  EXPECT_FALSE(m.mean_sim.has_value());
  EXPECT_EQ(m.errored, 1u);
  EXPECT_EQ(m.attacked, 1u);

  const MetricsReport all_skipped = FoldMetrics(
      std::vector<AttackResult>{WithStatus(AttackStatus::kSkipped, 1)});
  EXPECT_FALSE(all_skipped.asr.has_value());
  EXPECT_EQ(all_skipped.mean_queries, 0.0);
}

TEST(FoldMetricsTest, Invariants) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AttackResult> results;
    for (std::size_t i = rng() % 20; i > 0; --i) {
      switch (rng() % 4) {
        case 0:
          results.push_back(Success(unit(rng), unit(rng), rng() % 100));
          break;
        case 1:
          results.push_back(WithStatus(AttackStatus::kFailure, rng() % 100));
          break;
        case 2:
          results.push_back(WithStatus(AttackStatus::kSkipped, 1));
          break;
        default:
          results.push_back(WithStatus(AttackStatus::kErrored, 0));
      }
    }
    const MetricsReport m = FoldMetrics(results);
    EXPECT_EQ(m.attacked + m.skipped + m.errored, m.total);
    EXPECT_LE(m.successes, m.attacked);
    if (m.asr) {
      EXPECT_GE(*m.asr, 0.0);
      EXPECT_LE(*m.asr, 1.0);
    }
    if (m.mean_wsr) {
      EXPECT_GE(*m.mean_wsr, 0.0);
      EXPECT_LE(*m.mean_wsr, 1.0);
    }
    EXPECT_EQ(FoldMetrics(results), m);
  }
}

TEST(FormatSummaryTest, AlignedLines) {
  const std::string s = FormatSummary(
      FoldMetrics(std::vector<AttackResult>{Success(0.5, 0.25, 4)}));
  EXPECT_NE(s.find("asr:          1.000000\n"), std::string::npos) << s;
  EXPECT_NE(s.find("examples:     1\n"), std::string::npos) << s;
  const std::string empty =
      FormatSummary(FoldMetrics(std::vector<AttackResult>{}));
  EXPECT_NE(empty.find("wsr:          n/a\n"), std::string::npos) << empty;
}

TEST(DatasetTest, LoadAndValidate) {
  const LabelSet labels = LabelSet::Parse("pos,neg");
  const Dataset d =
      Dataset::Load(WriteTempFile("ds.jsonl",
                                  "{\"text\": \"good movie\", \"label\": 0}\n\n"
                                  "{\"text\": \"bad movie\", \"label\": 1}\n"),
                    labels);
  ASSERT_EQ(d.examples.size(), 2u);
  EXPECT_EQ(d.examples[1].label, 1u);
  EXPECT_THROW(Dataset::Load(WriteTempFile("ds_bad.jsonl",
                                           "{\"text\": \"x\", \"label\": 2}\n"),
                             labels),
               ConfigError);
  EXPECT_THROW(Dataset::Load(WriteTempFile("ds_junk.jsonl", "{oops\n"), labels),
               ConfigError);
  EXPECT_THROW(Dataset::Load(WriteTempFile("ds_empty.jsonl", ""), labels),
               ConfigError);
  EXPECT_THROW(Dataset::Load("/missing/ds.jsonl", labels), MissingFileError);
}

class SentimentFixture : public ::testing::Test {
 protected:
  SentimentFixture()
      : model_(LexiconModel::Binary({{"good", 2.0},
                                     {"great", 1.5},
                                     {"movie", 0.5},
                                     {"bad", -2.0},
                                     {"awful", -3.0},
                                     {"dull", -1.0}})),
        mlm_({{"good", {"bad", "great"}},
              {"great", {"awful", "good"}},
              {"bad", {"good"}},
              {"movie", {"film"}}}) {
    providers_.candidates.mlm = &mlm_;
    providers_.candidates.tagger = &tagger_;
    providers_.candidates.encoder = &encoder_;
    providers_.stopwords = &stopwords_;
    config_ = testing::TinyConfig(3);
    dataset_.labels = LabelSet::Parse("pos,neg");
    dataset_.examples = {{"good movie", 0}, {"great movie!", 0},
                         {"bad movie", 1},  {"good movie", 1},
                         {"movie dull", 1}, {"a great, good movie", 0}};
  }

  LexiconModel model_;
  TableMaskedLm mlm_;
  UniformPosTagger tagger_;
  HashedBowEncoder encoder_;
  StopwordList stopwords_;
  AttackProviders providers_;
  AttackConfig config_;
  Dataset dataset_;
};

TEST_F(SentimentFixture, EvaluateIsIndependentOfWorkerCount) {
  const Evaluation one = Evaluate(dataset_, model_, providers_, config_, 1);
  EXPECT_EQ(one.results.size(), dataset_.examples.size());
  EXPECT_EQ(one.report, FoldMetrics(one.results));
  EXPECT_EQ(one.results[3].status, AttackStatus::kSkipped);
  EXPECT_GT(one.report.successes, 0u);
  for (std::size_t workers : {2u, 4u, 16u}) {
    const Evaluation many =
        Evaluate(dataset_, model_, providers_, config_, workers);
    EXPECT_EQ(many.results, one.results);
    EXPECT_EQ(many.report, one.report);
  }
}

TEST_F(SentimentFixture, TransferToSameVictimIsZero) {
  const Evaluation eval = Evaluate(dataset_, model_, providers_, config_);
  EXPECT_EQ(TransferEvaluate(eval.results, model_), 0.0);
  EXPECT_THROW(TransferEvaluate(std::vector<AttackResult>{WithStatus(
                                    AttackStatus::kFailure, 1)},
                                model_),
               std::invalid_argument);
}

TEST_F(SentimentFixture, ExportedTextsRoundTrip) {
  const Evaluation eval = Evaluate(dataset_, model_, providers_, config_);
  const std::string path = ::testing::TempDir() + "/advtrain.jsonl";
  const std::size_t written = ExportAdvTrain(eval.results, path);
  EXPECT_EQ(written, eval.report.successes);
  const Dataset exported = Dataset::Load(path, dataset_.labels);
  ASSERT_EQ(exported.examples.size(), written);
  std::size_t k = 0;
  for (const AttackResult& r : eval.results) {
    if (r.status != AttackStatus::kSuccess) continue;
    EXPECT_EQ(Tokenize(exported.examples[k].text).tokens,
              r.adversarial->tokens);
    EXPECT_EQ(exported.examples[k].label, r.gold_label);
    ++k;
  }
  EXPECT_THROW(ExportAdvTrain(eval.results, "/nonexistent/dir/x.jsonl"),
               std::runtime_error);
}

TEST_F(SentimentFixture, ResultsFileRoundTrip) {
  const Evaluation eval = Evaluate(dataset_, model_, providers_, config_);
  const std::string path = ::testing::TempDir() + "/results.jsonl";
  WriteResults(eval.results, path);
  const std::vector<AttackResult> back = ReadResults(path);
  ASSERT_EQ(back.size(), eval.results.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].status, eval.results[i].status);
    EXPECT_EQ(back[i].original, eval.results[i].original);
    EXPECT_EQ(back[i].adversarial, eval.results[i].adversarial);
    EXPECT_EQ(back[i].substitutions, eval.results[i].substitutions);
    EXPECT_EQ(back[i].queries, eval.results[i].queries);
  }
  EXPECT_EQ(FoldMetrics(back), eval.report);

  const std::string again = ::testing::TempDir() + "/results_again.jsonl";
  WriteResults(back, again);
  EXPECT_EQ(Slurp(again), Slurp(path));
}

TEST(ResultJsonTest, FieldOrderAndNulls) {
  AttackResult r;
  r.status = AttackStatus::kFailure;
  r.original = T({"good", "movie", "!"});
  r.queries = 7;
  EXPECT_EQ(ResultToJson(r, 3).dump(),
            "{\"index\":3,\"status\":\"failure\",\"original\":\"good movie!\","
            "\"adversarial\":null,\"gold_label\":0,\"original_pred\":0,"
            "\"adv_pred\":null,\"substitutions\":[],\"wsr\":0.0,"
            "\"similarity\":0.0,\"queries\":7,\"iterations\":0}");
}

TEST(ResultJsonTest, RejectsInconsistentRecords) {
  nlohmann::json j = nlohmann::json::parse(
      "{\"index\":0,\"status\":\"success\",\"original\":\"good movie\","
      "\"adversarial\":\"bad film\",\"gold_label\":0,\"original_pred\":0,"
      "\"adv_pred\":1,\"substitutions\":[[0,\"good\",\"bad\"]],\"wsr\":0.5,"
      "\"similarity\":0.5,\"queries\":4,\"iterations\":1}");
  EXPECT_THROW(ResultFromJson(j), ConfigError);
  j["adversarial"] = "bad movie";
  EXPECT_EQ(ResultFromJson(j).adversarial->tokens,
            (std::vector<std::string>{"bad", "movie"}));
  j["status"] = "winning";
  EXPECT_THROW(ResultFromJson(j), ConfigError);
}

TEST(EvaluateTest, TransportFailureMarksExampleErrored) {
  ExternalVictim victim(std::string(TEXTBEAM_STUB_SERVER) + " exit",
                        LabelSet::Parse("pos,neg"));
  TableMaskedLm mlm;
  UniformPosTagger tagger;
  HashedBowEncoder encoder;
  AttackProviders providers;
  providers.candidates = {nullptr, &mlm, &tagger, &encoder};
  Dataset dataset;
  dataset.labels = LabelSet::Parse("pos,neg");
  dataset.examples = {{"good movie", 0}, {"bad movie", 1}};
  const Evaluation eval =
      Evaluate(dataset, victim, providers, testing::TinyConfig(2));
  ASSERT_EQ(eval.results.size(), 2u);
  for (const AttackResult& r : eval.results) {
    EXPECT_EQ(r.status, AttackStatus::kErrored);
    EXPECT_FALSE(r.error.empty());
  }
  EXPECT_EQ(eval.report.errored, 2u);
}

}  // namespace
}  // namespace textbeam
