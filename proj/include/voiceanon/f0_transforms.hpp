// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_F0_TRANSFORMS_HPP
#define VOICEANON_F0_TRANSFORMS_HPP

#include <cstdint>
#include <optional>

#include "voiceanon/f0_track.hpp"

namespace voiceanon {

struct MeanReversionConfig {
  double alpha = 0.0;        // blend weight in [0, 1]
  std::size_t window_n = 32; // moving-average frame count
};

struct F0NoiseConfig {
  double snr_db = 10.0;
  double floor_hz = 10.0;  // post-noise clamp keeps F0 vocoder-safe
  std::uint64_t seed = 0;
};

/// Trailing moving average over voiced frames only. For each voiced frame
/// the output is the arithmetic mean of the most recent min(window_n,
/// available) voiced f0 values at indices <= t; the current frame always
/// counts, unvoiced frames are skipped entirely and pass through as 0.
/// Partial windows at the track start use all voiced frames seen so far.
F0Track moving_average_f0(const F0Track& track, std::size_t window_n);

/// Blends the contour toward its trailing voiced moving average:
/// out = (1 - alpha) * f0 + alpha * moving_average. alpha = 0 reproduces
/// the input bit-for-bit, alpha = 1 the moving average.
F0Track mean_reversion_f0(const F0Track& track, const MeanReversionConfig& cfg);

/// Additive white Gaussian noise on voiced frames. The noise std is set
/// from the SNR against the RMS of the voiced contour:
///   sigma = rms(voiced f0) * 10^(-snr_db / 20)
/// Noisy values are clamped below at floor_hz. Unvoiced frames pass
/// through. One normal variate per voiced frame, in time order.
F0Track awgn_f0(const F0Track& track, const F0NoiseConfig& cfg);

struct F0Summary {
  struct VoicedStats {
    double mean_hz = 0.0;
    double std_hz = 0.0;  // population convention (divide by N)
    double min_hz = 0.0;
    double max_hz = 0.0;
  };
  std::optional<VoicedStats> stats;  // absent when the track has no voiced frame
  double voiced_ratio = 0.0;
};

F0Summary f0_summary(const F0Track& track);

}  // namespace voiceanon

#endif  // VOICEANON_F0_TRANSFORMS_HPP
