// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_EVAL_HPP
#define VOICEANON_EVAL_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "voiceanon/embedding.hpp"

namespace voiceanon {

enum class TrialLabel { genuine, impostor };

struct Trial {
  std::string enrol_id;
  std::string test_id;
  TrialLabel label = TrialLabel::genuine;
};

struct ScoredTrial {
  Trial trial;
  double score = 0.0;
};

struct EerResult {
  double eer_percent = 0.0;
  double threshold = 0.0;
  std::int64_t n_genuine = 0;
  std::int64_t n_impostor = 0;
};

/// Cosine-scores each trial by resolving enrol/test ids against the two
/// pools (an id matches the entry's utterance_id when present, speaker_id
/// otherwise). Output order equals input order. Unresolved or ambiguous
/// ids raise an error naming the id.
std::vector<ScoredTrial> score_trials(std::span<const Trial> trials,
                                      const EmbeddingPool& enrol,
                                      const EmbeddingPool& test);

void split_scores(std::span<const ScoredTrial> scored,
                  std::vector<double>& genuine, std::vector<double>& impostor);

/// Equal error rate with FAR(t) = fraction of impostor scores >= t and
/// FRR(t) = fraction of genuine scores < t, swept over the sorted unique
/// scores. Both rates are linearly interpolated between the adjacent
/// sweep points where FAR - FRR changes sign; the crossing value is
/// returned in percent. The sweep is a rank statistic: any strictly
/// increasing transform of all scores leaves the EER unchanged.
EerResult compute_eer(std::vector<double> genuine_scores,
                      std::vector<double> impostor_scores);

enum class ConditionBand { below_range, eer1, eer2, eer3, eer4 };

/// Half-open privacy bands, lower-inclusive:
/// [10, 20) -> EER1, [20, 30) -> EER2, [30, 40) -> EER3, >= 40 -> EER4,
/// < 10 -> below_range. Input outside [0, 100] is rejected.
ConditionBand classify_condition(double eer_percent);

const char* condition_name(ConditionBand band);

/// Trials CSV: header "enrol_id,test_id,label", label genuine|impostor.
std::vector<Trial> read_trials_csv(const std::filesystem::path& path);
void write_trials_csv(std::span<const Trial> trials,
                      const std::filesystem::path& path);

/// Scores CSV: header "enrol_id,test_id,score", 9 significant digits.
void write_scores_csv(std::span<const ScoredTrial> scored,
                      const std::filesystem::path& path);

}  // namespace voiceanon

#endif  // VOICEANON_EVAL_HPP
