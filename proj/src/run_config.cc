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

#include "textbeam/run_config.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "io_util.h"
#include "textbeam/errors.h"

namespace textbeam {
namespace {

namespace fs = std::filesystem;

std::string Resolve(std::string_view value, const std::string& base_dir) {
  fs::path p{std::string(value)};
  if (base_dir.empty() || p.is_absolute() || value.empty()) return p.string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

std::size_t ParseCount(std::string_view value, std::string_view key) {
  const long long v = internal::ParseInt(value, key);
  if (v < 0) throw ConfigError(std::string(key) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

bool ParseBool(std::string_view value, std::string_view key) {
  const std::string v = AsciiLower(internal::TrimAscii(value));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("invalid boolean '" + v + "' for " + std::string(key));
}

void RequireFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingFileError(path);
}

}  // namespace

RunConfig RunConfig::LoadFile(const std::string& path) {
  const std::vector<std::string> lines = internal::ReadLines(path);
  const std::string base_dir = fs::path(path).parent_path().string();
  RunConfig config;
  std::size_t line_no = 0;
  for (const std::string& raw : lines) {
    ++line_no;
    std::string_view line = internal::TrimAscii(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key=value at " + path + ":" +
                        std::to_string(line_no));
    }
    config.Set(internal::TrimAscii(line.substr(0, eq)),
               internal::TrimAscii(line.substr(eq + 1)),
               base_dir.empty() ? "." : base_dir);
  }
  return config;
}

void RunConfig::Set(std::string_view key, std::string_view value,
                    const std::string& base_dir) {
  if (key == "beam_size") {
    attack.beam_size = AsciiLower(value) == "unbounded"
                           ? kUnboundedBeam
                           : ParseCount(value, key);
  } else if (key == "top_n") {
    attack.top_n = ParseCount(value, key);
  } else if (key == "sim_threshold") {
    attack.sim_threshold = internal::ParseDouble(value, key);
  } else if (key == "wsr_threshold") {
    attack.wsr_threshold = internal::ParseDouble(value, key);
  } else if (key == "oov_token") {
    attack.oov_token = std::string(value);
  } else if (key == "space_mode") {
    std::optional<SpaceMode> mode = ParseSpaceMode(value);
    if (!mode) {
      throw ConfigError("space_mode must be embedding, mlm or mixed, not '" +
                        std::string(value) + "'");
    }
    attack.space_mode = *mode;
  } else if (key == "require_final_sim") {
    attack.require_final_sim = ParseBool(value, key);
  } else if (key == "dataset") {
    dataset = Resolve(value, base_dir);
  } else if (key == "embeddings") {
    embeddings = Resolve(value, base_dir);
  } else if (key == "stopwords") {
    stopwords = Resolve(value, base_dir);
  } else if (key == "pos_lexicon") {
    pos_lexicon = Resolve(value, base_dir);
  } else if (key == "mlm_table") {
    mlm_table = Resolve(value, base_dir);
  } else if (key == "mlm_command") {
    mlm_command = std::string(value);
  } else if (key == "victim") {
    constexpr std::string_view kLexicon = "lexicon:";
    if (value.rfind("external:", 0) == 0) {
      victim = std::string(value);
    } else if (value.rfind(kLexicon, 0) == 0) {
      victim = "lexicon:" + Resolve(value.substr(kLexicon.size()), base_dir);
    } else {
      victim = "lexicon:" + Resolve(value, base_dir);
    }
  } else if (key == "labels") {
    labels = std::string(value);
  } else if (key == "out") {
    out = Resolve(value, base_dir);
  } else if (key == "workers") {
    workers = ParseCount(value, key);
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(internal::ParseInt(value, key));
  } else if (key == "sample") {
    sample = ParseCount(value, key);
  } else {
    throw ConfigError("unknown config key: " + std::string(key));
  }
}

void RunConfig::Check() const {
  attack.Validate();
  LabelSet::Parse(labels);
  if (workers == 0) throw ConfigError("workers must be at least 1");
  if (dataset.empty()) throw ConfigError("no dataset configured");
  if (victim.empty()) throw ConfigError("no victim configured");
  RequireFile(dataset);
  if (victim.rfind("lexicon:", 0) == 0) RequireFile(victim.substr(8));
  if (attack.space_mode != SpaceMode::kMlm) {
    if (embeddings.empty()) {
      throw ConfigError("space mode " +
                        std::string(SpaceModeName(attack.space_mode)) +
                        " needs an embeddings file");
    }
    RequireFile(embeddings);
  }
  if (attack.space_mode != SpaceMode::kEmbedding) {
    if (mlm_table.empty() && mlm_command.empty()) {
      throw ConfigError("space mode " +
                        std::string(SpaceModeName(attack.space_mode)) +
                        " needs mlm_table or mlm_command");
    }
    if (!mlm_table.empty()) RequireFile(mlm_table);
  }
  if (!stopwords.empty()) RequireFile(stopwords);
  if (!pos_lexicon.empty()) RequireFile(pos_lexicon);
}

LoadedProviders::LoadedProviders(const RunConfig& config) {
  const SpaceMode mode = config.attack.space_mode;
  if (mode != SpaceMode::kMlm) {
    embedding_ = EmbeddingSpace::Load(config.embeddings);
  }
  if (mode != SpaceMode::kEmbedding) {
    if (!config.mlm_command.empty()) {
      mlm_ = std::make_unique<ExternalMaskedLm>(config.mlm_command);
    } else {
      mlm_ = std::make_unique<TableMaskedLm>(
          TableMaskedLm::Load(config.mlm_table));
    }
  }
  if (config.pos_lexicon.empty()) {
    tagger_ = std::make_unique<UniformPosTagger>();
  } else {
    tagger_ = std::make_unique<LexiconPosTagger>(
        LexiconPosTagger::Load(config.pos_lexicon));
  }
  stopwords_ = config.stopwords.empty() ? StopwordList::DefaultEnglish()
                                        : StopwordList::Load(config.stopwords);
}

AttackProviders LoadedProviders::view() {
  AttackProviders p;
  p.candidates.embedding = embedding_ ? &*embedding_ : nullptr;
  p.candidates.mlm = mlm_.get();
  p.candidates.tagger = tagger_.get();
  p.candidates.encoder = &encoder_;
  p.stopwords = &stopwords_;
  return p;
}

Dataset SelectExamples(const Dataset& dataset, std::size_t sample,
                       std::uint64_t seed) {
  if (sample == 0 || sample >= dataset.examples.size()) return dataset;
  std::vector<std::size_t> order(dataset.examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates with an explicit draw so the subset does not depend
  // on the standard library's shuffle.
  for (std::size_t i = 0; i < sample; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng() % (order.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(sample);
  std::sort(order.begin(), order.end());
  Dataset out;
  out.labels = dataset.labels;
  for (std::size_t i : order) out.examples.push_back(dataset.examples[i]);
  return out;
}

}  // namespace textbeam
