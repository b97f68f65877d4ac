// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_F0_TRACK_HPP
#define VOICEANON_F0_TRACK_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace voiceanon {

/// Per-frame fundamental-frequency contour. Unvoiced frames carry the
/// sentinel value 0 in f0_hz; voiced frames carry a strictly positive Hz
/// value. Both arrays always have the same length.
struct F0Track {
  double frame_period_ms = 10.0;
  std::vector<double> f0_hz;
  std::vector<std::uint8_t> voiced;  // 0 or 1, one per frame

  std::size_t size() const { return f0_hz.size(); }
  bool is_voiced(std::size_t t) const { return voiced[t] != 0; }
};

/// Throws std::invalid_argument if any F0Track invariant is violated.
void validate(const F0Track& track);

std::size_t voiced_count(const F0Track& track);

/// Track file format: a JSON object with keys "frame_period_ms" (number),
/// "f0_hz" (array of numbers) and "voiced" (array of 0/1), arrays of equal
/// length. The reader names the offending field and index on rejection.
F0Track read_f0_track(const std::filesystem::path& path);
void write_f0_track(const F0Track& track, const std::filesystem::path& path);

std::string f0_track_to_json(const F0Track& track);
F0Track f0_track_from_json(const std::string& text);

}  // namespace voiceanon

#endif  // VOICEANON_F0_TRACK_HPP
