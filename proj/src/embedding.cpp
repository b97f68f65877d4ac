// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "voiceanon/io_util.hpp"

namespace voiceanon {

Gender parse_gender(const std::string& text) {
  if (text == "M") return Gender::M;
  if (text == "F") return Gender::F;
  throw std::runtime_error("gender must be 'M' or 'F', got '" + text + "'");
}

const char* gender_name(Gender gender) {
  return gender == Gender::M ? "M" : "F";
}

Gender opposite(Gender gender) {
  return gender == Gender::M ? Gender::F : Gender::M;
}

const std::string& entry_key(const SpeakerEmbedding& embedding) {
  return embedding.utterance_id ? *embedding.utterance_id : embedding.speaker_id;
}

void validate(const EmbeddingPool& pool) {
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < pool.entries.size(); ++i) {
    const auto& entry = pool.entries[i];
    const std::string where = "entry[" + std::to_string(i) + "]";
    if (entry.vector.size() != pool.dimension) {
      throw std::invalid_argument(where + ": vector length " +
                                  std::to_string(entry.vector.size()) +
                                  " does not match pool dimension " +
                                  std::to_string(pool.dimension));
    }
    if (!(norm(entry.vector) > 0.0)) {
      throw std::invalid_argument(where + ": zero-norm vector");
    }
    const auto key = std::make_pair(entry.speaker_id,
                                    entry.utterance_id.value_or(""));
    if (!seen.insert(key).second) {
      throw std::invalid_argument(where + ": duplicate speaker/utterance pair '" +
                                  entry.speaker_id + "/" +
                                  entry.utterance_id.value_or("") + "'");
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw std::invalid_argument("cosine: zero-norm vector");
  }
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

std::vector<double> normalized(std::span<const double> v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalize zero vector");
  std::vector<double> out(v.begin(), v.end());
  if (n == 1.0) return out;
  for (auto& x : out) x /= n;
  return out;
}

namespace {

// Entries whose norm already sits within this tolerance of 1 are loaded
// verbatim; everything else is rescaled to unit norm.
constexpr double kUnitNormTolerance = 1e-6;

SpeakerEmbedding parse_entry(const nlohmann::json& doc) {
  SpeakerEmbedding entry;
  if (!doc.contains("speaker_id") || !doc["speaker_id"].is_string()) {
    throw std::runtime_error("entry requires string field 'speaker_id'");
  }
  entry.speaker_id = doc["speaker_id"].get<std::string>();
  if (!doc.contains("gender") || !doc["gender"].is_string()) {
    throw std::runtime_error("entry requires string field 'gender'");
  }
  entry.gender = parse_gender(doc["gender"].get<std::string>());
  if (doc.contains("utterance_id")) {
    if (!doc["utterance_id"].is_string()) {
      throw std::runtime_error("utterance_id must be a string");
    }
    entry.utterance_id = doc["utterance_id"].get<std::string>();
  }
  if (!doc.contains("vector") || !doc["vector"].is_array()) {
    throw std::runtime_error("entry requires array field 'vector'");
  }
  for (const auto& value : doc["vector"]) {
    if (!value.is_number()) throw std::runtime_error("vector values must be numbers");
    entry.vector.push_back(value.get<double>());
  }
  return entry;
}

}  // namespace

EmbeddingPool embedding_pool_from_jsonl(const std::string& text) {
  EmbeddingPool pool;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  bool dimension_fixed = false;

  auto fail = [&](const std::string& msg) -> std::runtime_error {
    return std::runtime_error("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fail(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw fail("expected a JSON object");

    if (pool.entries.empty() && !dimension_fixed && doc.contains("dimension") &&
        !doc.contains("speaker_id")) {
      if (!doc["dimension"].is_number_unsigned() || doc["dimension"].get<std::uint64_t>() == 0) {
        throw fail("dimension must be a positive integer");
      }
      pool.dimension = doc["dimension"].get<std::size_t>();
      dimension_fixed = true;
      continue;
    }

    SpeakerEmbedding entry;
    try {
      entry = parse_entry(doc);
    } catch (const std::runtime_error& e) {
      throw fail(e.what());
    }
    if (!dimension_fixed && pool.entries.empty()) {
      if (entry.vector.empty()) throw fail("first entry has an empty vector");
      pool.dimension = entry.vector.size();
      dimension_fixed = true;
    }
    if (entry.vector.size() != pool.dimension) {
      throw fail("vector length " + std::to_string(entry.vector.size()) +
                 " does not match dimension " + std::to_string(pool.dimension));
    }
    const double n = norm(entry.vector);
    if (!(n > 0.0)) throw fail("zero-norm vector");
    if (std::abs(n - 1.0) > kUnitNormTolerance) {
      for (auto& x : entry.vector) x /= n;
    }
    pool.entries.push_back(std::move(entry));
  }

  try {
    validate(pool);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  return pool;
}

std::string embedding_pool_to_jsonl(const EmbeddingPool& pool) {
  validate(pool);
  std::string text;
  if (pool.dimension > 0) {
    nlohmann::json header;
    header["dimension"] = pool.dimension;
    text += header.dump();
    text += '\n';
  }
  for (const auto& entry : pool.entries) {
    nlohmann::json doc;
    doc["speaker_id"] = entry.speaker_id;
    doc["gender"] = gender_name(entry.gender);
    if (entry.utterance_id) doc["utterance_id"] = *entry.utterance_id;
    auto& vec = doc["vector"] = nlohmann::json::array();
    for (const double x : entry.vector) vec.push_back(round_sig9(x));
    text += doc.dump();
    text += '\n';
  }
  return text;
}

EmbeddingPool read_embedding_pool(const std::filesystem::path& path) {
  try {
    return embedding_pool_from_jsonl(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_embedding_pool(const EmbeddingPool& pool,
                          const std::filesystem::path& path) {
  write_text_atomic(path, embedding_pool_to_jsonl(pool));
}

}  // namespace voiceanon
