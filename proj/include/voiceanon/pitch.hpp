// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_PITCH_HPP
#define VOICEANON_PITCH_HPP

#include "voiceanon/f0_track.hpp"
#include "voiceanon/wav.hpp"

namespace voiceanon {

struct PitchConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  double fmin_hz = 60.0;
  double fmax_hz = 400.0;
  double voicing_threshold = 0.45;  // minimum normalized autocorrelation peak
  double energy_gate_rms = 0.01;    // frames below this RMS are unvoiced
};

/// Reference time-domain pitch extractor. Per frame, the normalized
/// cross-correlation is evaluated over lags [rate/fmax, rate/fmin]; the
/// frame is voiced iff the peak reaches voicing_threshold and the frame
/// RMS reaches energy_gate_rms. The period is the first local correlation
/// peak within 90% of the global maximum (octave-error suppression);
/// voiced F0 is rate / lag with parabolic peak interpolation, clamped
/// into [fmin, fmax]. Unvoiced frames carry 0. frame_period_ms of the
/// result equals hop_ms; the frame count is floor((len - frame) / hop) + 1.
F0Track extract_f0_autocorr(const Waveform& wave, const PitchConfig& cfg = {});

}  // namespace voiceanon

#endif  // VOICEANON_PITCH_HPP
