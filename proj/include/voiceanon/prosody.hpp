// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_PROSODY_HPP
#define VOICEANON_PROSODY_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace voiceanon {

struct PhonemeProsody {
  std::string phoneme_id;
  double pitch = 0.0;   // normalized per-phoneme F0 value
  double energy = 0.0;
  std::int64_t duration_frames = 1;
};

/// Half-open multiplier interval [lo, hi); lo == hi denotes the identity.
struct MultiplierRange {
  double lo = 1.0;
  double hi = 1.0;
};

void validate(const PhonemeProsody& phoneme, std::size_t index);
void validate(const MultiplierRange& range);

/// Multiplies pitch and energy of each phoneme by independent draws from
/// Uniform[lo, hi). Draw order is fixed: phoneme index ascending, pitch
/// before energy. Ids and durations are copied through untouched.
std::vector<PhonemeProsody> randomize_prosody(std::span<const PhonemeProsody> seq,
                                              const MultiplierRange& range,
                                              std::uint64_t seed);

/// The multiplier-range presets, widest first, ending with the no-op
/// [1.0, 1.0] that leaves prosody unmodified.
std::vector<MultiplierRange> preset_ranges();

/// CSV with header "phoneme,pitch,energy,duration_frames"; numbers carry
/// 9 significant digits. Errors name the offending line.
std::vector<PhonemeProsody> read_prosody_csv(const std::filesystem::path& path);
void write_prosody_csv(std::span<const PhonemeProsody> seq,
                       const std::filesystem::path& path);

}  // namespace voiceanon

#endif  // VOICEANON_PROSODY_HPP
