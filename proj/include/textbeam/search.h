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

#ifndef TEXTBEAM_SEARCH_H_
#define TEXTBEAM_SEARCH_H_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textbeam/candidates.h"
#include "textbeam/importance.h"
#include "textbeam/text.h"
#include "textbeam/victim.h"

namespace textbeam {

inline constexpr std::size_t kUnboundedBeam =
    std::numeric_limits<std::size_t>::max();

struct AttackConfig {
  // K; kUnboundedBeam keeps every pool member.
  std::size_t beam_size = 10;
  // N, per semantic space.
  std::size_t top_n = 50;
  // L, strict lower bound on candidate similarity.
  double sim_threshold = 0.5;
  // sigma, strict upper bound on WSR for a success; 1.0 disables the check.
  double wsr_threshold = 1.0;
  std::string oov_token = std::string(kDefaultOovToken);
  SpaceMode space_mode = SpaceMode::kMixed;
  // Also require the final adversarial text to have similarity > L.
  bool require_final_sim = false;
  // Largest search space ExhaustiveAttack will enumerate.
  std::size_t exhaustive_cap = 1'000'000;

  // Throws ConfigError when a field is out of range.
  void Validate() const;

  CandidateOptions candidate_options() const {
    return {top_n, sim_threshold, space_mode};
  }
};

enum class AttackStatus { kSuccess, kFailure, kSkipped, kErrored };

std::string_view AttackStatusName(AttackStatus status);
std::optional<AttackStatus> ParseAttackStatus(std::string_view name);

struct AttackResult {
  AttackStatus status = AttackStatus::kFailure;
  Text original;
  std::optional<Text> adversarial;
  std::size_t gold_label = 0;
  std::size_t original_pred = 0;
  std::optional<std::size_t> adv_pred;
  // Sorted by position.
  std::vector<Substitution> substitutions;
  double wsr = 0.0;
  double similarity = 0.0;
  std::size_t queries = 0;
  std::size_t iterations = 0;
  // Diagnostic for kErrored.
  std::string error;

  friend bool operator==(const AttackResult&, const AttackResult&) = default;
};

// Everything the attack needs besides the victim.
struct AttackProviders {
  CandidateSources candidates;
  const StopwordList* stopwords = &StopwordList::DefaultEnglish();
};

// One partially substituted text tracked by the search.
struct BeamMember {
  Text text;
  // Sorted by position.
  std::vector<Substitution> substitutions;
  double true_prob = 0.0;
  // F_true(original) - F_true(text).
  double drop = 0.0;
  double similarity = 0.0;
  std::size_t pred = 0;
};

// Receives the search state after each iteration: the merged pool and the
// beam selected from it (empty when the iteration produced a success).
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  virtual void OnIteration(std::size_t iteration, std::size_t position,
                           std::span<const BeamMember> pool,
                           std::span<const BeamMember> beam) = 0;
};

// Full pipeline: skip check, importance ranking, candidate sets, beam search.
// `queries` counts distinct texts sent to `model` during the whole attack.
AttackResult BeamAttack(const Text& text, std::size_t gold_label,
                        VictimModel& model, const AttackProviders& providers,
                        const AttackConfig& config,
                        SearchObserver* observer = nullptr);

// BeamAttack with beam size 1.
AttackResult GreedyAttack(const Text& text, std::size_t gold_label,
                          VictimModel& model, const AttackProviders& providers,
                          const AttackConfig& config);

// Skip check plus the merged-beam search over precomputed candidate sets,
// visited in the given order. Each iteration expands every beam member with
// every candidate at the next position, merges the previous members back into
// the pool, scores the new variants in one batch, returns the most similar
// misclassified pool member if any, and otherwise keeps the top beam_size
// members by probability drop.
AttackResult SearchCandidates(const Text& text, std::size_t gold_label,
                              VictimModel& model,
                              std::span<const CandidateSet> ranked_sets,
                              const SentenceEncoder& encoder,
                              const AttackConfig& config,
                              SearchObserver* observer = nullptr);

// Verification oracle: enumerates every keep-or-substitute combination over
// the candidate sets. Among misclassified combinations it returns the one
// with the fewest substitutions, then the highest similarity. Throws
// SearchLimitError when the product of (1 + |C_i|) exceeds
// config.exhaustive_cap.
AttackResult ExhaustiveAttack(const Text& text, std::size_t gold_label,
                              VictimModel& model,
                              std::span<const CandidateSet> candidate_sets,
                              const SentenceEncoder& encoder,
                              const AttackConfig& config);

// Candidate sets in attack order for an already correctly classified text.
std::vector<CandidateSet> RankedCandidateSets(const Text& text,
                                              std::size_t gold_label,
                                              VictimModel& model,
                                              const AttackProviders& providers,
                                              const AttackConfig& config);

}  // namespace textbeam

#endif  // TEXTBEAM_SEARCH_H_
