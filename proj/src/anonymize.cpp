// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/anonymize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voiceanon/rng.hpp"

namespace voiceanon {

SpeakerEmbedding select_random_speaker(
    const EmbeddingPool& pool, std::uint64_t seed,
    const std::optional<std::string>& exclude_speaker) {
  std::vector<std::size_t> eligible;
  eligible.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (exclude_speaker && pool.entries[i].speaker_id == *exclude_speaker) continue;
    eligible.push_back(i);
  }
  if (eligible.empty()) throw std::runtime_error("empty pool");
  SeededRng rng(seed);
  const std::size_t pick = eligible[rng.uniform_int(eligible.size())];
  return pool.entries[pick];
}

EmbeddingPool cross_gender_filter(const EmbeddingPool& pool, Gender source_gender) {
  EmbeddingPool out;
  out.dimension = pool.dimension;
  for (const auto& entry : pool.entries) {
    if (entry.gender != source_gender) out.entries.push_back(entry);
  }
  if (out.entries.empty()) throw std::runtime_error("no opposite-gender candidates");
  return out;
}

std::vector<double> farthest_pool_average(const SpeakerEmbedding& source,
                                          const EmbeddingPool& pool,
                                          const FarthestPoolConfig& cfg,
                                          std::uint64_t seed) {
  if (cfg.k_far == 0 || cfg.k_select == 0 || cfg.k_select > cfg.k_far) {
    throw std::invalid_argument("farthest-pool config requires 0 < k_select <= k_far");
  }

  struct Ranked {
    double similarity;
    std::size_t index;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool.entries[i].speaker_id == source.speaker_id) continue;
    ranked.push_back({cosine_similarity(source.vector, pool.entries[i].vector), i});
  }
  if (ranked.size() < cfg.k_select) throw std::runtime_error("pool too small");

  // Lowest similarity first = farthest first; stable keeps input order on ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) {
                     return a.similarity < b.similarity;
                   });
  const std::size_t candidates = std::min(cfg.k_far, ranked.size());

  SeededRng rng(seed);
  auto picks = rng.sample_without_replacement(candidates, cfg.k_select);
  // Canonical summation order: the whole-pool case stays seed-independent
  // down to the last bit.
  std::sort(picks.begin(), picks.end());

  std::vector<double> mean(pool.dimension, 0.0);
  for (const std::size_t p : picks) {
    const auto& vec = pool.entries[ranked[p].index].vector;
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += vec[d];
  }
  for (auto& x : mean) x /= static_cast<double>(cfg.k_select);
  return cfg.renormalize ? normalized(mean) : mean;
}

std::vector<double> embedding_awgn(std::span<const double> vec,
                                   const EmbeddingNoiseConfig& cfg) {
  if (!(cfg.scale >= 0.0)) throw std::invalid_argument("noise scale must be >= 0");
  std::vector<double> out = normalized(vec);
  SeededRng rng(cfg.seed);
  for (auto& x : out) x += cfg.scale * rng.normal();
  return normalized(out);
}

RejectionResult rejection_sample_anon(const SpeakerEmbedding& source,
                                      const PseudoSpeakerGenerator& generator,
                                      const RejectionConfig& cfg,
                                      std::uint64_t seed) {
  if (cfg.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  RejectionResult result;
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    std::vector<double> candidate =
        generator(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (candidate.size() != source.vector.size()) {
      throw std::invalid_argument("generator produced dimension " +
                                  std::to_string(candidate.size()) + ", expected " +
                                  std::to_string(source.vector.size()));
    }
    const double distance = cosine_distance(source.vector, candidate);
    result.vector = std::move(candidate);
    result.attempts = attempt + 1;
    result.accepted = cfg.accept_when == AcceptWhen::distance_below
                          ? distance < cfg.distance_threshold
                          : distance > cfg.distance_threshold;
    if (result.accepted) break;
  }
  return result;
}

PseudoSpeakerGenerator pool_average_generator(const EmbeddingPool& pool,
                                              std::size_t avg_count) {
  if (pool.entries.empty()) throw std::runtime_error("empty pool");
  if (avg_count == 0) throw std::invalid_argument("avg_count must be >= 1");
  return [&pool, avg_count](std::uint64_t seed) {
    SeededRng rng(seed);
    const std::size_t take = std::min(avg_count, pool.size());
    auto picks = rng.sample_without_replacement(pool.size(), take);
    std::sort(picks.begin(), picks.end());
    std::vector<double> mean(pool.dimension, 0.0);
    for (const std::size_t p : picks) {
      const auto& vec = pool.entries[p].vector;
      for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += vec[d];
    }
    for (auto& x : mean) x /= static_cast<double>(take);
    return normalized(mean);
  };
}

AnonStrategy parse_strategy(const std::string& name) {
  if (name == "none") return AnonStrategy::none;
  if (name == "random" || name == "random_speaker") return AnonStrategy::random_speaker;
  if (name == "farthest" || name == "farthest_pool_average") {
    return AnonStrategy::farthest_pool_average;
  }
  if (name == "rejection") return AnonStrategy::rejection;
  throw std::runtime_error("unknown strategy '" + name +
                           "' (expected none|random|farthest|rejection)");
}

std::vector<double> anonymize_utterance(const SpeakerEmbedding& source,
                                        const EmbeddingPool& pool,
                                        const AnonSpec& spec,
                                        std::uint64_t seed) {
  const EmbeddingPool* active = &pool;
  EmbeddingPool filtered;
  if (spec.cross_gender) {
    filtered = cross_gender_filter(pool, source.gender);
    active = &filtered;
  }

  std::vector<double> vec;
  switch (spec.strategy) {
    case AnonStrategy::none:
      vec = source.vector;
      break;
    case AnonStrategy::random_speaker:
      vec = select_random_speaker(*active, derive_seed(seed, "anon.random-speaker"),
                                  source.speaker_id)
                .vector;
      break;
    case AnonStrategy::farthest_pool_average:
      vec = farthest_pool_average(source, *active, spec.farthest,
                                  derive_seed(seed, "anon.farthest"));
      break;
    case AnonStrategy::rejection: {
      // The reference generator must not resynthesize the source identity.
      EmbeddingPool others;
      others.dimension = active->dimension;
      for (const auto& entry : active->entries) {
        if (entry.speaker_id != source.speaker_id) others.entries.push_back(entry);
      }
      if (others.entries.empty()) throw std::runtime_error("empty pool");
      const auto generator =
          pool_average_generator(others, spec.generator_avg_count);
      vec = rejection_sample_anon(source, generator, spec.rejection,
                                  derive_seed(seed, "anon.rejection"))
                .vector;
      break;
    }
  }

  if (spec.noise_scale) {
    vec = embedding_awgn(vec, {*spec.noise_scale, derive_seed(seed, "anon.noise")});
  }
  return vec;
}

}  // namespace voiceanon
