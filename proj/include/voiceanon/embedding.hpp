// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_EMBEDDING_HPP
#define VOICEANON_EMBEDDING_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voiceanon {

enum class Gender { M, F };

Gender parse_gender(const std::string& text);
const char* gender_name(Gender gender);
Gender opposite(Gender gender);

struct SpeakerEmbedding {
  std::string speaker_id;
  Gender gender = Gender::M;
  std::optional<std::string> utterance_id;
  std::vector<double> vector;
};

/// Trial and lookup key: the utterance id when present, the speaker id
/// otherwise.
const std::string& entry_key(const SpeakerEmbedding& embedding);

struct EmbeddingPool {
  std::size_t dimension = 0;
  std::vector<SpeakerEmbedding> entries;

  std::size_t size() const { return entries.size(); }
};

/// Checks shared dimension, positive norms and (speaker_id, utterance_id)
/// uniqueness; throws std::invalid_argument naming the offending entry.
void validate(const EmbeddingPool& pool);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

/// dot(a, b) / (|a| * |b|), clamped into [-1, 1]. Throws on dimension
/// mismatch or a zero-norm argument.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

inline double cosine_distance(std::span<const double> a,
                              std::span<const double> b) {
  return 1.0 - cosine_similarity(a, b);
}

/// Returns v scaled to unit L2 norm; throws on zero norm. Division is
/// skipped when the computed norm is exactly 1, so unit vectors pass
/// through bit-identically.
std::vector<double> normalized(std::span<const double> v);

/// Pool file format: JSON Lines. An optional first line {"dimension": d}
/// pins the dimension; otherwise it is inferred from the first entry.
/// Each entry line holds "speaker_id", "gender" ("M"|"F"), optional
/// "utterance_id" and "vector". Entries are scaled to unit norm on load;
/// vectors already within 1e-6 of unit norm are kept bit-exact so files
/// written by this toolkit reread without loss.
EmbeddingPool read_embedding_pool(const std::filesystem::path& path);
void write_embedding_pool(const EmbeddingPool& pool,
                          const std::filesystem::path& path);
std::string embedding_pool_to_jsonl(const EmbeddingPool& pool);
EmbeddingPool embedding_pool_from_jsonl(const std::string& text);

}  // namespace voiceanon

#endif  // VOICEANON_EMBEDDING_HPP
