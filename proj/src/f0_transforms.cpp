// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/f0_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voiceanon/rng.hpp"

namespace voiceanon {

F0Track moving_average_f0(const F0Track& track, std::size_t window_n) {
  validate(track);
  if (track.size() == 0) throw std::invalid_argument("empty track");
  if (window_n == 0) throw std::invalid_argument("invalid window");

  // Compact the voiced values; the window counts voiced frames, not
  // timeline frames.
  std::vector<double> voiced_values;
  voiced_values.reserve(track.size());

  F0Track out = track;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    voiced_values.push_back(track.f0_hz[t]);
    const std::size_t have = voiced_values.size();
    const std::size_t take = std::min(window_n, have);
    double sum = 0.0;
    for (std::size_t j = have - take; j < have; ++j) sum += voiced_values[j];
    out.f0_hz[t] = sum / static_cast<double>(take);
  }
  return out;
}

F0Track mean_reversion_f0(const F0Track& track, const MeanReversionConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  const F0Track averaged = moving_average_f0(track, cfg.window_n);

  F0Track out = track;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    out.f0_hz[t] = (1.0 - cfg.alpha) * track.f0_hz[t] + cfg.alpha * averaged.f0_hz[t];
  }
  return out;
}

F0Track awgn_f0(const F0Track& track, const F0NoiseConfig& cfg) {
  validate(track);
  if (track.size() == 0) throw std::invalid_argument("empty track");
  if (!(cfg.floor_hz > 0.0)) throw std::invalid_argument("floor_hz must be positive");

  double square_sum = 0.0;
  std::size_t n_voiced = 0;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    square_sum += track.f0_hz[t] * track.f0_hz[t];
    ++n_voiced;
  }
  if (n_voiced == 0) throw std::invalid_argument("no voiced frames for SNR reference");

  const double rms = std::sqrt(square_sum / static_cast<double>(n_voiced));
  const double sigma = rms * std::pow(10.0, -cfg.snr_db / 20.0);

  SeededRng rng(cfg.seed);
  F0Track out = track;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    out.f0_hz[t] = std::max(cfg.floor_hz, track.f0_hz[t] + sigma * rng.normal());
  }
  return out;
}

F0Summary f0_summary(const F0Track& track) {
  validate(track);
  F0Summary summary;
  std::size_t n = 0;
  double sum = 0.0;
  double min_hz = 0.0;
  double max_hz = 0.0;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    const double f0 = track.f0_hz[t];
    if (n == 0) {
      min_hz = max_hz = f0;
    } else {
      min_hz = std::min(min_hz, f0);
      max_hz = std::max(max_hz, f0);
    }
    sum += f0;
    ++n;
  }
  if (track.size() > 0) {
    summary.voiced_ratio =
        static_cast<double>(n) / static_cast<double>(track.size());
  }
  if (n == 0) return summary;

  const double mean = sum / static_cast<double>(n);
  double var_sum = 0.0;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    const double d = track.f0_hz[t] - mean;
    var_sum += d * d;
  }
  summary.stats = F0Summary::VoicedStats{
      mean, std::sqrt(var_sum / static_cast<double>(n)), min_hz, max_hz};
  return summary;
}

}  // namespace voiceanon
