// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace voiceanon {

namespace {

double frame_rms(const double* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * x[i];
  return std::sqrt(sum / static_cast<double>(n));
}

// Normalized cross-correlation of a frame against itself at the given lag,
// computed over the n - lag overlapping samples.
double nccf(const double* x, std::size_t n, std::size_t lag) {
  double cross = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  const std::size_t m = n - lag;
  for (std::size_t i = 0; i < m; ++i) {
    cross += x[i] * x[i + lag];
    e0 += x[i] * x[i];
    e1 += x[i + lag] * x[i + lag];
  }
  const double denom = std::sqrt(e0 * e1);
  return denom > 0.0 ? cross / denom : 0.0;
}

}  // namespace

F0Track extract_f0_autocorr(const Waveform& wave, const PitchConfig& cfg) {
  if (wave.sample_rate_hz < 8000) {
    throw std::invalid_argument("sample rate below 8000 Hz");
  }
  if (!(cfg.frame_ms > 0.0 && cfg.hop_ms > 0.0)) {
    throw std::invalid_argument("frame and hop must be positive");
  }
  if (!(cfg.fmin_hz > 0.0 && cfg.fmin_hz < cfg.fmax_hz)) {
    throw std::invalid_argument("need 0 < fmin < fmax");
  }
  const double rate = wave.sample_rate_hz;
  const auto frame_len =
      static_cast<std::size_t>(std::llround(cfg.frame_ms * rate / 1000.0));
  const auto hop =
      static_cast<std::size_t>(std::llround(cfg.hop_ms * rate / 1000.0));
  if (frame_len < 2 || hop < 1) throw std::invalid_argument("degenerate frame/hop");
  if (wave.samples.size() < frame_len) {
    throw std::invalid_argument("signal shorter than one frame");
  }

  const auto lag_min = static_cast<std::size_t>(std::ceil(rate / cfg.fmax_hz));
  const auto lag_max = std::min(
      static_cast<std::size_t>(std::floor(rate / cfg.fmin_hz)), frame_len - 1);

  const std::size_t n_frames = (wave.samples.size() - frame_len) / hop + 1;
  F0Track track;
  track.frame_period_ms = cfg.hop_ms;
  track.f0_hz.assign(n_frames, 0.0);
  track.voiced.assign(n_frames, 0);

  std::vector<double> corr(lag_max + 1, 0.0);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double* x = wave.samples.data() + f * hop;
    if (frame_rms(x, frame_len) < cfg.energy_gate_rms) continue;
    if (lag_min > lag_max) continue;

    std::size_t global_lag = lag_min;
    double best = -2.0;
    for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
      corr[lag] = nccf(x, frame_len, lag);
      if (corr[lag] > best) {
        best = corr[lag];
        global_lag = lag;
      }
    }
    if (best < cfg.voicing_threshold) continue;

    // Period multiples correlate as strongly as the period itself; the
    // first local peak within 90% of the global maximum is the period,
    // which suppresses octave-down errors.
    std::size_t best_lag = global_lag;
    for (std::size_t lag = lag_min + 1; lag + 1 <= lag_max; ++lag) {
      if (corr[lag] >= 0.9 * best && corr[lag] >= corr[lag - 1] &&
          corr[lag] >= corr[lag + 1]) {
        best_lag = lag;
        break;
      }
    }

    // Parabolic refinement around the integer peak.
    double lag = static_cast<double>(best_lag);
    if (best_lag > lag_min && best_lag < lag_max) {
      const double left = corr[best_lag - 1];
      const double mid = corr[best_lag];
      const double right = corr[best_lag + 1];
      const double denom = left - 2.0 * mid + right;
      if (denom < 0.0) {
        const double delta = 0.5 * (left - right) / denom;
        if (std::abs(delta) <= 1.0) lag += delta;
      }
    }
    track.f0_hz[f] = std::clamp(rate / lag, cfg.fmin_hz, cfg.fmax_hz);
    track.voiced[f] = 1;
  }
  return track;
}

}  // namespace voiceanon
