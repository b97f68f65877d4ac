// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_ANONYMIZE_HPP
#define VOICEANON_ANONYMIZE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "voiceanon/embedding.hpp"

namespace voiceanon {

struct FarthestPoolConfig {
  std::size_t k_far = 200;     // size of the farthest candidate set
  std::size_t k_select = 100;  // how many candidates are averaged
  bool renormalize = true;
};

struct EmbeddingNoiseConfig {
  double scale = 0.0;  // per-dimension Gaussian std
  std::uint64_t seed = 0;
};

enum class AcceptWhen { distance_below, distance_above };

struct RejectionConfig {
  double distance_threshold = 0.3;
  int max_attempts = 30;
  AcceptWhen accept_when = AcceptWhen::distance_below;
};

/// Uniform choice over the pool, optionally excluding one speaker id.
/// Selection is per call; callers wanting per-utterance randomness pass a
/// per-utterance seed.
SpeakerEmbedding select_random_speaker(
    const EmbeddingPool& pool, std::uint64_t seed,
    const std::optional<std::string>& exclude_speaker = std::nullopt);

/// Sub-pool of entries whose gender differs from source_gender, order
/// preserved. Throws when no candidate remains.
EmbeddingPool cross_gender_filter(const EmbeddingPool& pool, Gender source_gender);

/// Ranks the pool (minus the source speaker's own entries) by ascending
/// cosine similarity to the source, keeps the min(k_far, size) farthest
/// with ties broken by input order, samples k_select of them uniformly
/// without replacement, and returns the arithmetic mean vector,
/// L2-normalized when cfg.renormalize is set.
std::vector<double> farthest_pool_average(const SpeakerEmbedding& source,
                                          const EmbeddingPool& pool,
                                          const FarthestPoolConfig& cfg,
                                          std::uint64_t seed);

/// Unit-normalizes the input, adds i.i.d. Normal(0, scale^2) per
/// dimension (ascending order), renormalizes.
std::vector<double> embedding_awgn(std::span<const double> vec,
                                   const EmbeddingNoiseConfig& cfg);

/// Candidate source for rejection sampling; receives a per-attempt
/// derived seed.
using PseudoSpeakerGenerator = std::function<std::vector<double>(std::uint64_t)>;

struct RejectionResult {
  std::vector<double> vector;
  int attempts = 0;
  bool accepted = false;
};

/// Draws candidates until one satisfies the accept_when predicate against
/// the cosine distance to the source (strict comparison), giving up after
/// max_attempts and returning the last candidate with accepted = false.
/// Attempt k uses derive_seed(seed, k).
RejectionResult rejection_sample_anon(const SpeakerEmbedding& source,
                                      const PseudoSpeakerGenerator& generator,
                                      const RejectionConfig& cfg,
                                      std::uint64_t seed);

/// Reference pseudo-speaker generator: averages avg_count pool entries
/// sampled without replacement and normalizes the result. The pool
/// reference must outlive the generator.
PseudoSpeakerGenerator pool_average_generator(const EmbeddingPool& pool,
                                              std::size_t avg_count = 10);

/// The selection step of the pipeline; `none` passes the source vector
/// through untouched, for noise-only anonymization.
enum class AnonStrategy { none, random_speaker, farthest_pool_average, rejection };

AnonStrategy parse_strategy(const std::string& name);

struct AnonSpec {
  AnonStrategy strategy = AnonStrategy::random_speaker;
  bool cross_gender = false;
  std::optional<double> noise_scale;  // embedding AWGN applied when set
  FarthestPoolConfig farthest;
  RejectionConfig rejection;
  std::size_t generator_avg_count = 10;  // reference generator for rejection
};

/// Full per-utterance pipeline: cross-gender filter (if set), the named
/// strategy with the source speaker excluded from the pool, then
/// embedding AWGN (if configured). Stage seeds are derived from the call
/// seed with fixed labels, so one seed pins the whole pipeline.
std::vector<double> anonymize_utterance(const SpeakerEmbedding& source,
                                        const EmbeddingPool& pool,
                                        const AnonSpec& spec,
                                        std::uint64_t seed);

}  // namespace voiceanon

#endif  // VOICEANON_ANONYMIZE_HPP
