// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_WAV_HPP
#define VOICEANON_WAV_HPP

#include <filesystem>
#include <vector>

namespace voiceanon {

struct Waveform {
  int sample_rate_hz = 16000;
  std::vector<double> samples;  // in [-1, 1]
};

/// Reads a RIFF/PCM WAV file: 16-bit signed little-endian, mono or stereo
/// (stereo is averaged to mono). Samples are scaled by 1/32768. Other
/// formats and truncated chunks are rejected with the offending field
/// named.
Waveform read_wav(const std::filesystem::path& path);

}  // namespace voiceanon

#endif  // VOICEANON_WAV_HPP
