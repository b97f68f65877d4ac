// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/population.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "voiceanon/rng.hpp"

namespace voiceanon {

namespace {

void check_config(const SyntheticPopulationConfig& cfg) {
  if (cfg.n_speakers < 2) throw std::invalid_argument("need at least 2 speakers");
  if (cfg.utterances_per_speaker < 1) {
    throw std::invalid_argument("need at least 1 utterance per speaker");
  }
  if (cfg.dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(cfg.within_speaker_std >= 0.0)) {
    throw std::invalid_argument("within_speaker_std must be >= 0");
  }
  if (!(cfg.gender_split >= 0.0 && cfg.gender_split <= 1.0)) {
    throw std::invalid_argument("gender_split must lie in [0, 1]");
  }
}

std::string speaker_name(const char* prefix, std::size_t s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04zu", prefix, s);
  return buf;
}

std::vector<double> random_unit_vector(SeededRng& rng, std::size_t dimension) {
  std::vector<double> v(dimension);
  for (auto& x : v) x = rng.normal();
  return normalized(v);
}

std::vector<double> noisy_utterance(SeededRng& rng,
                                    const std::vector<double>& mean,
                                    double std_dev) {
  std::vector<double> v(mean.size());
  for (std::size_t d = 0; d < v.size(); ++d) v[d] = mean[d] + std_dev * rng.normal();
  return normalized(v);
}

EmbeddingPool build_pool(const SyntheticPopulationConfig& cfg, const char* prefix,
                         std::uint64_t seed, const char* side_suffix) {
  // Draw order per speaker: mean direction, then one utterance per slot.
  EmbeddingPool pool;
  pool.dimension = cfg.dimension;
  SeededRng rng(seed);
  const auto n_male = static_cast<std::size_t>(
      std::llround(cfg.gender_split * static_cast<double>(cfg.n_speakers)));
  for (std::size_t s = 0; s < cfg.n_speakers; ++s) {
    const std::vector<double> mean = random_unit_vector(rng, cfg.dimension);
    const Gender gender = s < n_male ? Gender::M : Gender::F;
    const std::string speaker = speaker_name(prefix, s);
    for (std::size_t u = 0; u < cfg.utterances_per_speaker; ++u) {
      SpeakerEmbedding entry;
      entry.speaker_id = speaker;
      entry.gender = gender;
      entry.utterance_id = speaker + side_suffix + std::to_string(u);
      entry.vector = noisy_utterance(rng, mean, cfg.within_speaker_std);
      pool.entries.push_back(std::move(entry));
    }
  }
  return pool;
}

}  // namespace

Population generate_population(const SyntheticPopulationConfig& cfg) {
  check_config(cfg);
  Population population;
  // One generator, fixed draw order per speaker: mean, enrol utterances,
  // test utterances. Both sides share the speaker mean.
  population.enrol.dimension = cfg.dimension;
  population.test.dimension = cfg.dimension;
  SeededRng rng(cfg.seed);
  const auto n_male = static_cast<std::size_t>(
      std::llround(cfg.gender_split * static_cast<double>(cfg.n_speakers)));
  for (std::size_t s = 0; s < cfg.n_speakers; ++s) {
    const std::vector<double> mean = random_unit_vector(rng, cfg.dimension);
    const Gender gender = s < n_male ? Gender::M : Gender::F;
    const std::string speaker = speaker_name("spk", s);
    for (std::size_t u = 0; u < cfg.utterances_per_speaker; ++u) {
      SpeakerEmbedding entry;
      entry.speaker_id = speaker;
      entry.gender = gender;
      entry.utterance_id = speaker + "-e" + std::to_string(u);
      entry.vector = noisy_utterance(rng, mean, cfg.within_speaker_std);
      population.enrol.entries.push_back(std::move(entry));
    }
    for (std::size_t u = 0; u < cfg.utterances_per_speaker; ++u) {
      SpeakerEmbedding entry;
      entry.speaker_id = speaker;
      entry.gender = gender;
      entry.utterance_id = speaker + "-t" + std::to_string(u);
      entry.vector = noisy_utterance(rng, mean, cfg.within_speaker_std);
      population.test.entries.push_back(std::move(entry));
    }
  }

  const std::size_t utts = cfg.utterances_per_speaker;
  auto enrol_entry = [&](std::size_t s, std::size_t u) -> const SpeakerEmbedding& {
    return population.enrol.entries[s * utts + u];
  };
  auto test_entry = [&](std::size_t s, std::size_t u) -> const SpeakerEmbedding& {
    return population.test.entries[s * utts + u];
  };

  for (std::size_t s = 0; s < cfg.n_speakers; ++s) {
    for (std::size_t i = 0; i < utts; ++i) {
      for (std::size_t j = 0; j < utts; ++j) {
        population.trials.push_back({entry_key(enrol_entry(s, i)),
                                     entry_key(test_entry(s, j)),
                                     TrialLabel::genuine});
      }
    }
  }

  const std::size_t n_genuine = population.trials.size();
  SeededRng trial_rng(derive_seed(cfg.seed, "trials"));
  std::set<std::pair<std::size_t, std::size_t>> used;
  const std::size_t n_entries = cfg.n_speakers * utts;
  while (used.size() < n_genuine) {
    const auto e = static_cast<std::size_t>(trial_rng.uniform_int(n_entries));
    const auto t = static_cast<std::size_t>(trial_rng.uniform_int(n_entries));
    if (e / utts == t / utts) continue;  // same speaker
    if (!used.insert({e, t}).second) continue;
    population.trials.push_back({entry_key(population.enrol.entries[e]),
                                 entry_key(population.test.entries[t]),
                                 TrialLabel::impostor});
  }
  return population;
}

EmbeddingPool generate_target_pool(const SyntheticPopulationConfig& cfg) {
  check_config(cfg);
  return build_pool(cfg, "pool-", derive_seed(cfg.seed, "target-pool"), "-u");
}

EerResult run_attack_experiment(const Population& population,
                                const EmbeddingPool& target_pool,
                                const std::optional<AnonSpec>& spec,
                                std::uint64_t seed) {
  const EmbeddingPool* test_side = &population.test;
  EmbeddingPool anonymized;
  if (spec) {
    anonymized.dimension = population.test.dimension;
    anonymized.entries = population.test.entries;
    for (auto& entry : anonymized.entries) {
      entry.vector =
          anonymize_utterance(entry, target_pool, *spec,
                              derive_seed(seed, entry_key(entry)));
    }
    test_side = &anonymized;
  }
  const auto scored = score_trials(population.trials, population.enrol, *test_side);
  std::vector<double> genuine, impostor;
  split_scores(scored, genuine, impostor);
  return compute_eer(std::move(genuine), std::move(impostor));
}

EerResult run_attack_experiment(const SyntheticPopulationConfig& cfg,
                                const std::optional<AnonSpec>& spec,
                                std::uint64_t seed) {
  const Population population = generate_population(cfg);
  const EmbeddingPool target_pool = generate_target_pool(cfg);
  return run_attack_experiment(population, target_pool, spec, seed);
}

}  // namespace voiceanon
