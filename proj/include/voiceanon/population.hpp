// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_POPULATION_HPP
#define VOICEANON_POPULATION_HPP

#include <cstdint>
#include <optional>

#include "voiceanon/anonymize.hpp"
#include "voiceanon/embedding.hpp"
#include "voiceanon/eval.hpp"

namespace voiceanon {

struct SyntheticPopulationConfig {
  std::size_t n_speakers = 50;
  std::size_t utterances_per_speaker = 10;
  std::size_t dimension = 32;
  double within_speaker_std = 0.05;
  std::uint64_t seed = 0;
  double gender_split = 0.5;  // fraction of speakers assigned gender M
};

struct Population {
  EmbeddingPool enrol;
  EmbeddingPool test;
  std::vector<Trial> trials;
};

/// Synthetic verification population. Each speaker gets a mean direction
/// drawn uniformly on the unit sphere; each utterance is the unit-
/// normalized sum of that mean and per-dimension Normal(0, std^2) noise.
/// Enrol and test pools each hold n_speakers * utterances_per_speaker
/// entries. Trials enumerate every same-speaker enrol/test pair as
/// genuine plus an equal-size seeded sample of distinct cross-speaker
/// pairs as impostor. The first round(gender_split * n) speakers are M.
Population generate_population(const SyntheticPopulationConfig& cfg);

/// Semi-informed attacker stand-in: anonymizes every test-side utterance
/// (enrol side untouched, target pool as given), cosine-scores the trials
/// and returns the EER. Per-utterance anonymization seeds derive from
/// (seed, entry key). spec == nullopt scores the population as-is.
EerResult run_attack_experiment(const Population& population,
                                const EmbeddingPool& target_pool,
                                const std::optional<AnonSpec>& spec,
                                std::uint64_t seed);

/// Convenience overload: generates the population from cfg plus a
/// disjoint target pool of the same shape (speaker ids prefixed "pool-",
/// pool seed derived from cfg.seed with label "target-pool").
EerResult run_attack_experiment(const SyntheticPopulationConfig& cfg,
                                const std::optional<AnonSpec>& spec,
                                std::uint64_t seed);

/// The disjoint target pool used by the convenience overload.
EmbeddingPool generate_target_pool(const SyntheticPopulationConfig& cfg);

}  // namespace voiceanon

#endif  // VOICEANON_POPULATION_HPP
