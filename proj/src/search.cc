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

#include "textbeam/search.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "textbeam/errors.h"
#include "textbeam/simd/kernels.h"

namespace textbeam {
namespace {

std::vector<std::size_t> Positions(const std::vector<Substitution>& subs) {
  std::vector<std::size_t> out;
  out.reserve(subs.size());
  for (const Substitution& s : subs) out.push_back(s.position);
  return out;
}

// Beam order: larger drop, then higher similarity, then lexicographically
// smaller substituted positions, then token sequence.
bool BeamOrder(const BeamMember& a, const BeamMember& b) {
  if (a.drop != b.drop) return a.drop > b.drop;
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  const std::vector<std::size_t> pa = Positions(a.substitutions);
  const std::vector<std::size_t> pb = Positions(b.substitutions);
  if (pa != pb) return pa < pb;
  return a.text.tokens < b.text.tokens;
}

// Among simultaneous successes: higher similarity, fewer substitutions,
// lexicographic positions, token sequence.
bool SuccessOrder(const BeamMember& a, const BeamMember& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  if (a.substitutions.size() != b.substitutions.size()) {
    return a.substitutions.size() < b.substitutions.size();
  }
  const std::vector<std::size_t> pa = Positions(a.substitutions);
  const std::vector<std::size_t> pb = Positions(b.substitutions);
  if (pa != pb) return pa < pb;
  return a.text.tokens < b.text.tokens;
}

// Exhaustive oracle order: fewest substitutions first, then as above.
bool FewestFirstOrder(const BeamMember& a, const BeamMember& b) {
  if (a.substitutions.size() != b.substitutions.size()) {
    return a.substitutions.size() < b.substitutions.size();
  }
  return SuccessOrder(a, b);
}

double Wsr(const BeamMember& m, std::size_t token_count) {
  return token_count == 0 ? 0.0
                          : static_cast<double>(m.substitutions.size()) /
                                static_cast<double>(token_count);
}

class SuccessTest {
 public:
  SuccessTest(std::size_t gold_label, std::size_t token_count,
              const AttackConfig& config)
      : gold_label_(gold_label), token_count_(token_count), config_(config) {}

  bool operator()(const BeamMember& m) const {
    if (m.pred == gold_label_ || m.substitutions.empty()) return false;
    if (config_.wsr_threshold < 1.0 &&
        !(Wsr(m, token_count_) < config_.wsr_threshold)) {
      return false;
    }
    if (config_.require_final_sim && !(m.similarity > config_.sim_threshold)) {
      return false;
    }
    return true;
  }

 private:
  std::size_t gold_label_;
  std::size_t token_count_;
  const AttackConfig& config_;
};

// Scores `members` in one batch and fills the probability-derived fields.
void ScoreMembers(std::vector<BeamMember>& members, VictimModel& model,
                  std::size_t gold_label, double original_true_prob,
                  const std::vector<double>& original_code,
                  const SentenceEncoder& encoder) {
  if (members.empty()) return;
  std::vector<Text> batch;
  batch.reserve(members.size());
  for (const BeamMember& m : members) batch.push_back(m.text);
  const std::vector<ProbVector> probs = model.PredictProba(batch);
  for (std::size_t i = 0; i < members.size(); ++i) {
    BeamMember& m = members[i];
    m.true_prob = probs[i].at(gold_label);
    m.drop = original_true_prob - m.true_prob;
    m.pred = Argmax(probs[i]);
    m.similarity = simd::Cosine(original_code, encoder.Encode(m.text));
  }
}

AttackResult BaseResult(const Text& text, std::size_t gold_label,
                        std::size_t original_pred) {
  AttackResult result;
  result.original = Text{text.tokens, std::nullopt};
  result.gold_label = gold_label;
  result.original_pred = original_pred;
  return result;
}

void FillSuccess(AttackResult& result, const BeamMember& winner) {
  result.status = AttackStatus::kSuccess;
  result.adversarial = Text{winner.text.tokens, std::nullopt};
  result.adv_pred = winner.pred;
  result.substitutions = winner.substitutions;
  result.wsr = Wsr(winner, result.original.size());
  result.similarity = winner.similarity;
}

std::optional<AttackResult> SkipIfMisclassified(const Text& text,
                                                std::size_t gold_label,
                                                VictimModel& model,
                                                ProbVector& original_probs) {
  original_probs = model.PredictOne(text);
  const std::size_t pred = Argmax(original_probs);
  if (gold_label >= original_probs.size()) {
    throw ConfigError("gold label " + std::to_string(gold_label) +
                      " outside the victim's label set");
  }
  if (pred == gold_label) return std::nullopt;
  AttackResult result = BaseResult(text, gold_label, pred);
  result.status = AttackStatus::kSkipped;
  return result;
}

}  // namespace

void AttackConfig::Validate() const {
  if (beam_size == 0) throw ConfigError("beam size must be at least 1");
  if (!(sim_threshold >= -1.0 && sim_threshold < 1.0)) {
    throw ConfigError("similarity threshold must lie in [-1, 1)");
  }
  if (!(wsr_threshold > 0.0 && wsr_threshold <= 1.0)) {
    throw ConfigError("WSR threshold must lie in (0, 1]");
  }
  if (oov_token.empty() ||
      oov_token.find_first_of(" \t\r\n\f\v") != std::string::npos) {
    throw ConfigError("oov token must be non-empty and whitespace-free");
  }
  if (exhaustive_cap == 0) throw ConfigError("exhaustive cap must be positive");
}

std::string_view AttackStatusName(AttackStatus status) {
  switch (status) {
    case AttackStatus::kSuccess:
      return "success";
    case AttackStatus::kFailure:
      return "failure";
    case AttackStatus::kSkipped:
      return "skipped";
    case AttackStatus::kErrored:
      return "errored";
  }
  return "errored";
}

std::optional<AttackStatus> ParseAttackStatus(std::string_view name) {
  for (AttackStatus s : {AttackStatus::kSuccess, AttackStatus::kFailure,
                         AttackStatus::kSkipped, AttackStatus::kErrored}) {
    if (AttackStatusName(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<CandidateSet> RankedCandidateSets(const Text& text,
                                              std::size_t gold_label,
                                              VictimModel& model,
                                              const AttackProviders& providers,
                                              const AttackConfig& config) {
  const std::vector<ImportanceScore> scores =
      ComputeImportance(text, model, gold_label, config.oov_token);
  const std::vector<std::size_t> order =
      RankPositions(scores, text, *providers.stopwords);
  std::vector<CandidateSet> sets;
  sets.reserve(order.size());
  const CandidateOptions options = config.candidate_options();
  for (std::size_t position : order) {
    sets.push_back(
        BuildCandidateSet(text, position, providers.candidates, options));
  }
  return sets;
}

AttackResult BeamAttack(const Text& text, std::size_t gold_label,
                        VictimModel& model, const AttackProviders& providers,
                        const AttackConfig& config, SearchObserver* observer) {
  config.Validate();
  CountingVictim counter(model);
  ProbVector original_probs;
  if (auto skipped =
          SkipIfMisclassified(text, gold_label, counter, original_probs)) {
    skipped->queries = counter.queries();
    return *skipped;
  }
  const std::vector<CandidateSet> sets =
      RankedCandidateSets(text, gold_label, counter, providers, config);
  AttackResult result =
      SearchCandidates(text, gold_label, counter, sets,
                       *providers.candidates.encoder, config, observer);
  result.queries = counter.queries();
  return result;
}

AttackResult GreedyAttack(const Text& text, std::size_t gold_label,
                          VictimModel& model, const AttackProviders& providers,
                          const AttackConfig& config) {
  AttackConfig greedy = config;
  greedy.beam_size = 1;
  return BeamAttack(text, gold_label, model, providers, greedy);
}

AttackResult SearchCandidates(const Text& text, std::size_t gold_label,
                              VictimModel& model,
                              std::span<const CandidateSet> ranked_sets,
                              const SentenceEncoder& encoder,
                              const AttackConfig& config,
                              SearchObserver* observer) {
  config.Validate();
  CountingVictim counter(model);
  ProbVector original_probs;
  if (auto skipped =
          SkipIfMisclassified(text, gold_label, counter, original_probs)) {
    skipped->queries = counter.queries();
    return *skipped;
  }
  AttackResult result = BaseResult(text, gold_label, gold_label);
  const double original_true_prob = original_probs[gold_label];
  const std::vector<double> original_code = encoder.Encode(text);
  const SuccessTest is_success(gold_label, text.size(), config);

  BeamMember root;
  root.text = Text{text.tokens, std::nullopt};
  root.true_prob = original_true_prob;
  root.pred = gold_label;
  root.similarity = simd::Cosine(original_code, original_code);
  std::vector<BeamMember> beam{root};

  for (std::size_t iter = 0; iter < ranked_sets.size(); ++iter) {
    const CandidateSet& set = ranked_sets[iter];
    const std::size_t position = set.position;
    result.iterations = iter + 1;

    std::set<std::vector<std::string>> seen;
    for (const BeamMember& m : beam) seen.insert(m.text.tokens);

    std::vector<BeamMember> expanded;
    for (const BeamMember& member : beam) {
      const bool already = std::any_of(
          member.substitutions.begin(), member.substitutions.end(),
          [&](const Substitution& s) { return s.position == position; });
      if (already) continue;
      for (const Candidate& candidate : set.candidates) {
        BeamMember child;
        child.text = Substitute(member.text, position, candidate.word);
        if (!seen.insert(child.text.tokens).second) continue;
        child.substitutions = member.substitutions;
        child.substitutions.push_back(
            {position, text.tokens[position], candidate.word});
        std::sort(child.substitutions.begin(), child.substitutions.end(),
                  [](const Substitution& a, const Substitution& b) {
                    return a.position < b.position;
                  });
        expanded.push_back(std::move(child));
      }
    }
    ScoreMembers(expanded, counter, gold_label, original_true_prob,
                 original_code, encoder);

    // Merge: previous members compete with their expansions.
    std::vector<BeamMember> pool = std::move(beam);
    pool.insert(pool.end(), std::make_move_iterator(expanded.begin()),
                std::make_move_iterator(expanded.end()));

    const BeamMember* winner = nullptr;
    for (const BeamMember& m : pool) {
      if (is_success(m) && (winner == nullptr || SuccessOrder(m, *winner))) {
        winner = &m;
      }
    }
    if (winner != nullptr) {
      FillSuccess(result, *winner);
      if (observer != nullptr) observer->OnIteration(iter, position, pool, {});
      return result;
    }

    std::sort(pool.begin(), pool.end(), BeamOrder);
    const std::size_t keep = std::min(pool.size(), config.beam_size);
    if (observer != nullptr) {
      beam.assign(pool.begin(), pool.begin() + keep);
      observer->OnIteration(iter, position, pool, beam);
    } else {
      pool.resize(keep);
      beam = std::move(pool);
    }
  }
  result.status = AttackStatus::kFailure;
  return result;
}

AttackResult ExhaustiveAttack(const Text& text, std::size_t gold_label,
                              VictimModel& model,
                              std::span<const CandidateSet> candidate_sets,
                              const SentenceEncoder& encoder,
                              const AttackConfig& config) {
  config.Validate();
  std::size_t space = 1;
  for (const CandidateSet& set : candidate_sets) {
    const std::size_t radix = set.size() + 1;
    if (space > config.exhaustive_cap / radix) {
      throw SearchLimitError("exhaustive search space exceeds cap of " +
                             std::to_string(config.exhaustive_cap));
    }
    space *= radix;
  }
  if (space > config.exhaustive_cap) {
    throw SearchLimitError("exhaustive search space exceeds cap of " +
                           std::to_string(config.exhaustive_cap));
  }

  CountingVictim counter(model);
  ProbVector original_probs;
  if (auto skipped =
          SkipIfMisclassified(text, gold_label, counter, original_probs)) {
    skipped->queries = counter.queries();
    return *skipped;
  }
  AttackResult result = BaseResult(text, gold_label, gold_label);
  result.iterations = candidate_sets.size();
  const std::vector<double> original_code = encoder.Encode(text);
  const SuccessTest is_success(gold_label, text.size(), config);

  constexpr std::size_t kChunk = 4096;
  std::vector<std::size_t> digits(candidate_sets.size(), 0);
  std::optional<BeamMember> best;
  std::size_t remaining = space;
  while (remaining > 0) {
    std::vector<BeamMember> chunk;
    while (remaining > 0 && chunk.size() < kChunk) {
      BeamMember m;
      m.text = Text{text.tokens, std::nullopt};
      for (std::size_t s = 0; s < candidate_sets.size(); ++s) {
        if (digits[s] == 0) continue;
        const CandidateSet& set = candidate_sets[s];
        const std::string& word = set.candidates[digits[s] - 1].word;
        m.text.tokens.at(set.position) = word;
        m.substitutions.push_back(
            {set.position, text.tokens[set.position], word});
      }
      std::sort(m.substitutions.begin(), m.substitutions.end(),
                [](const Substitution& a, const Substitution& b) {
                  return a.position < b.position;
                });
      chunk.push_back(std::move(m));
      --remaining;
      for (std::size_t s = 0; s < digits.size(); ++s) {
        if (++digits[s] <= candidate_sets[s].size()) break;
        digits[s] = 0;
      }
    }
    ScoreMembers(chunk, counter, gold_label, original_probs[gold_label],
                 original_code, encoder);
    for (BeamMember& m : chunk) {
      if (is_success(m) && (!best || FewestFirstOrder(m, *best))) {
        best = std::move(m);
      }
    }
  }
  if (best) {
    FillSuccess(result, *best);
  } else {
    result.status = AttackStatus::kFailure;
  }
  result.queries = counter.queries();
  return result;
}

}  // namespace textbeam
