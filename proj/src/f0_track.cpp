// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/f0_track.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "voiceanon/io_util.hpp"

namespace voiceanon {

void validate(const F0Track& track) {
  if (track.f0_hz.size() != track.voiced.size()) {
    throw std::invalid_argument("f0_hz and voiced lengths differ");
  }
  if (!(track.frame_period_ms > 0.0)) {
    throw std::invalid_argument("frame_period_ms must be positive");
  }
  for (std::size_t t = 0; t < track.size(); ++t) {
    const double f0 = track.f0_hz[t];
    if (!std::isfinite(f0) || f0 < 0.0) {
      throw std::invalid_argument("f0_hz[" + std::to_string(t) +
                                  "]: must be finite and non-negative");
    }
    if (track.voiced[t] > 1) {
      throw std::invalid_argument("voiced[" + std::to_string(t) +
                                  "]: must be 0 or 1");
    }
    if (track.is_voiced(t) && f0 <= 0.0) {
      throw std::invalid_argument("f0_hz[" + std::to_string(t) +
                                  "]: voiced frame requires f0 > 0");
    }
    if (!track.is_voiced(t) && f0 != 0.0) {
      throw std::invalid_argument("f0_hz[" + std::to_string(t) +
                                  "]: unvoiced frame must carry 0");
    }
  }
}

std::size_t voiced_count(const F0Track& track) {
  std::size_t n = 0;
  for (const auto v : track.voiced) n += (v != 0);
  return n;
}

std::string f0_track_to_json(const F0Track& track) {
  nlohmann::json doc;
  doc["frame_period_ms"] = round_sig9(track.frame_period_ms);
  auto& f0 = doc["f0_hz"] = nlohmann::json::array();
  for (const double v : track.f0_hz) f0.push_back(round_sig9(v));
  auto& voiced = doc["voiced"] = nlohmann::json::array();
  for (const auto v : track.voiced) voiced.push_back(static_cast<int>(v));
  return doc.dump() + "\n";
}

F0Track f0_track_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("track JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("track file: top level must be an object");
  for (const char* key : {"frame_period_ms", "f0_hz", "voiced"}) {
    if (!doc.contains(key)) {
      throw std::runtime_error(std::string("track file: missing field '") + key + "'");
    }
  }
  F0Track track;
  if (!doc["frame_period_ms"].is_number()) {
    throw std::runtime_error("frame_period_ms: must be a number");
  }
  track.frame_period_ms = doc["frame_period_ms"].get<double>();
  const auto& f0 = doc["f0_hz"];
  const auto& voiced = doc["voiced"];
  if (!f0.is_array()) throw std::runtime_error("f0_hz: must be an array");
  if (!voiced.is_array()) throw std::runtime_error("voiced: must be an array");
  track.f0_hz.reserve(f0.size());
  for (std::size_t i = 0; i < f0.size(); ++i) {
    if (!f0[i].is_number()) {
      throw std::runtime_error("f0_hz[" + std::to_string(i) + "]: must be a number");
    }
    track.f0_hz.push_back(f0[i].get<double>());
  }
  track.voiced.reserve(voiced.size());
  for (std::size_t i = 0; i < voiced.size(); ++i) {
    const auto& v = voiced[i];
    int flag = -1;
    if (v.is_boolean()) flag = v.get<bool>() ? 1 : 0;
    else if (v.is_number_integer()) flag = v.get<int>();
    if (flag != 0 && flag != 1) {
      throw std::runtime_error("voiced[" + std::to_string(i) + "]: must be 0 or 1");
    }
    track.voiced.push_back(static_cast<std::uint8_t>(flag));
  }
  try {
    validate(track);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("track file: ") + e.what());
  }
  return track;
}

F0Track read_f0_track(const std::filesystem::path& path) {
  try {
    return f0_track_from_json(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_f0_track(const F0Track& track, const std::filesystem::path& path) {
  validate(track);
  write_text_atomic(path, f0_track_to_json(track));
}

}  // namespace voiceanon
