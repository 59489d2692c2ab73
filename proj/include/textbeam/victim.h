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

#ifndef TEXTBEAM_VICTIM_H_
#define TEXTBEAM_VICTIM_H_

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textbeam/line_channel.h"
#include "textbeam/text.h"

namespace textbeam {

// Class probabilities indexed by label id.
using ProbVector = std::vector<double>;

inline constexpr double kProbSumTolerance = 1e-6;

// Ordered, unique label names; a label id is its index.
class LabelSet {
 public:
  LabelSet() = default;
  // Throws ConfigError on fewer than two labels or duplicates.
  explicit LabelSet(std::vector<std::string> names);

  // Parses "pos,neg".
  static LabelSet Parse(std::string_view comma_separated);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

// Predicted label: index of the largest probability, ties to the lowest id.
std::size_t Argmax(const ProbVector& probs);

// Throws ProtocolError unless `probs` has `num_classes` entries, each in
// [0, 1], summing to 1 within kProbSumTolerance.
void CheckProbVector(const ProbVector& probs, std::size_t num_classes);

// Black-box classifier: the only model access an attack has. Implementations
// must tolerate concurrent PredictProba calls; single-client backends
// serialize internally.
class VictimModel {
 public:
  virtual ~VictimModel() = default;

  // One ProbVector per input, in order.
  virtual std::vector<ProbVector> PredictProba(std::span<const Text> texts) = 0;

  virtual std::size_t num_classes() const = 0;

  ProbVector PredictOne(const Text& text);
};

// Bag-of-words victim with case-insensitive token weights. With one weight
// per token (binary form) P(label 0) = sigmoid(bias + sum of weights) and
// P(label 1) is the complement. With k weights per token the per-class sums
// go through a softmax.
class LexiconModel : public VictimModel {
 public:
  static LexiconModel Binary(
      const std::unordered_map<std::string, double>& weights,
      double bias = 0.0);
  static LexiconModel Multiclass(
      const std::unordered_map<std::string, std::vector<double>>& weights,
      std::vector<double> bias);

  // Text file, one "word<TAB>w" or "word<TAB>w0 w1 ... wk-1" record per line;
  // the reserved word "__bias__" sets the bias. '#' starts a comment line.
  static LexiconModel Load(const std::string& path);

  ProbVector Score(const Text& text) const;

  std::vector<ProbVector> PredictProba(std::span<const Text> texts) override;
  std::size_t num_classes() const override { return num_classes_; }
  bool binary() const { return binary_; }

 private:
  LexiconModel() = default;

  bool binary_ = true;
  std::size_t num_classes_ = 2;
  std::unordered_map<std::string, std::vector<double>> weights_;
  std::vector<double> bias_;
};

// Forwards to an inner model, counting every text actually sent to it.
// Repeats of an already scored token sequence are served from a cache and
// cost nothing, including repeats inside one batch.
class CountingVictim : public VictimModel {
 public:
  explicit CountingVictim(VictimModel& inner) : inner_(inner) {}

  std::vector<ProbVector> PredictProba(std::span<const Text> texts) override;
  std::size_t num_classes() const override { return inner_.num_classes(); }

  std::size_t queries() const { return queries_.load(); }

 private:
  VictimModel& inner_;
  std::mutex mu_;
  std::map<std::vector<std::string>, ProbVector> cache_;
  std::atomic<std::size_t> queries_{0};
};

// Victim served by a child process over the JSON line protocol:
//   request  {"id":<int>,"texts":[<string>,...]}
//   response {"id":<int>,"probs":[[<float>,...],...]}
// Texts are sent detokenized. Calls are serialized. Any malformed response,
// id mismatch, normalization violation or process exit throws
// TransportError/ProtocolError.
class ExternalVictim : public VictimModel {
 public:
  ExternalVictim(const std::string& command, LabelSet labels);

  std::vector<ProbVector> PredictProba(std::span<const Text> texts) override;
  std::size_t num_classes() const override { return labels_.size(); }

 private:
  LabelSet labels_;
  std::mutex mu_;
  LineChannel channel_;
  long long next_id_ = 0;
};

// Builds a victim from "lexicon:PATH" or "external:COMMAND". A bare path is
// read as a lexicon file.
std::unique_ptr<VictimModel> MakeVictim(const std::string& spec,
                                        const LabelSet& labels);

}  // namespace textbeam

#endif  // TEXTBEAM_VICTIM_H_
