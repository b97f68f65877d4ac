// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "voiceanon/pitch.hpp"
#include "voiceanon/wav.hpp"

using namespace voiceanon;
using voiceanon::test::TempDir;
using Catch::Approx;

namespace {

std::vector<std::int16_t> sine_pcm(double freq_hz, double seconds,
                                   std::uint32_t rate, double amplitude) {
  const auto n = static_cast<std::size_t>(seconds * rate);
  std::vector<std::int16_t> pcm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz *
                                          static_cast<double>(i) / rate);
    pcm[i] = static_cast<std::int16_t>(std::lround(x * 32767.0));
  }
  return pcm;
}

Waveform sine_wave(double freq_hz, double seconds, int rate, double amplitude) {
  Waveform wave;
  wave.sample_rate_hz = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  wave.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    wave.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz *
                                           static_cast<double>(i) / rate);
  }
  return wave;
}

double median_voiced_f0(const F0Track& track) {
  std::vector<double> voiced;
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (track.is_voiced(t)) voiced.push_back(track.f0_hz[t]);
  }
  REQUIRE_FALSE(voiced.empty());
  std::sort(voiced.begin(), voiced.end());
  return voiced[voiced.size() / 2];
}

}  // namespace

TEST_CASE("read_wav: silence, scaling, stereo averaging") {
  TempDir dir("wav");

  const auto silence = dir.path("silence.wav");
  test::write_bytes(silence, test::wav_bytes({std::vector<std::int16_t>(16000, 0)}, 16000));
  const auto zero = read_wav(silence);
  REQUIRE(zero.sample_rate_hz == 16000);
  REQUIRE(zero.samples.size() == 16000);
  for (const double s : zero.samples) REQUIRE(s == 0.0);

  const auto full = dir.path("full.wav");
  test::write_bytes(full, test::wav_bytes({{32767, -32768}}, 16000));
  const auto scaled = read_wav(full);
  REQUIRE(scaled.samples[0] == Approx(32767.0 / 32768.0));
  REQUIRE(scaled.samples[1] == -1.0);

  const auto stereo = dir.path("stereo.wav");
  const std::vector<std::int16_t> left(100, 16384);    // +0.5
  const std::vector<std::int16_t> right(100, -16384);  // -0.5
  test::write_bytes(stereo, test::wav_bytes({left, right}, 16000));
  const auto mono = read_wav(stereo);
  REQUIRE(mono.samples.size() == 100);
  for (const double s : mono.samples) REQUIRE(s == 0.0);
}

TEST_CASE("read_wav: rejects malformed files naming the field") {
  TempDir dir("wavbad");

  auto expect_error = [&](const std::string& bytes, const std::string& needle) {
    const auto path = dir.path("bad.wav");
    test::write_bytes(path, bytes);
    try {
      read_wav(path);
      FAIL("expected rejection for " << needle);
    } catch (const std::runtime_error& e) {
      REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
  };

  expect_error("JUNKJUNKJUNK", "RIFF");

  // Non-PCM format tag.
  std::string ieee = test::wav_bytes({{0, 0, 0, 0}}, 16000);
  ieee[20] = 3;  // audio_format = 3 (IEEE float)
  expect_error(ieee, "audio_format");

  // 8-bit sample width.
  std::string eight = test::wav_bytes({{0, 0, 0, 0}}, 16000);
  eight[34] = 8;
  expect_error(eight, "bits_per_sample");

  // Truncated data chunk.
  std::string truncated = test::wav_bytes({std::vector<std::int16_t>(100, 5)}, 16000);
  truncated.resize(truncated.size() - 50);
  expect_error(truncated, "truncated");

  expect_error(test::wav_bytes({{0, 0}}, 4000), "sample_rate");
}

TEST_CASE("extract_f0: recovers pure-tone pitch within 3 Hz") {
  for (const double freq : {220.0, 330.0}) {
    const auto wave = sine_wave(freq, 1.0, 16000, 0.5);
    const auto track = extract_f0_autocorr(wave);
    validate(track);
    REQUIRE(track.frame_period_ms == 10.0);
    REQUIRE(median_voiced_f0(track) == Approx(freq).margin(3.0));

    // Interior frames are voiced for a clean, loud tone.
    std::size_t voiced = voiced_count(track);
    REQUIRE(voiced >= track.size() - 2);
  }
}

TEST_CASE("extract_f0: digital silence stays unvoiced") {
  Waveform wave;
  wave.sample_rate_hz = 16000;
  wave.samples.assign(16000, 0.0);
  const auto track = extract_f0_autocorr(wave);
  REQUIRE(voiced_count(track) == 0);
  for (const double f0 : track.f0_hz) REQUIRE(f0 == 0.0);
}

TEST_CASE("extract_f0: quiet tones fall below the energy gate") {
  const auto wave = sine_wave(220.0, 0.5, 16000, 0.005);
  const auto track = extract_f0_autocorr(wave);
  REQUIRE(voiced_count(track) == 0);
}

TEST_CASE("extract_f0: frame count and F0 range invariants") {
  SeededRng rng(6);
  Waveform wave;
  wave.sample_rate_hz = 16000;
  wave.samples.resize(12345);
  for (auto& s : wave.samples) s = rng.uniform(-0.8, 0.8);

  PitchConfig cfg;
  const auto track = extract_f0_autocorr(wave, cfg);
  const std::size_t frame = 400;  // 25 ms at 16 kHz
  const std::size_t hop = 160;    // 10 ms
  REQUIRE(track.size() == (wave.samples.size() - frame) / hop + 1);
  for (std::size_t t = 0; t < track.size(); ++t) {
    if (!track.is_voiced(t)) continue;
    REQUIRE(track.f0_hz[t] >= cfg.fmin_hz);
    REQUIRE(track.f0_hz[t] <= cfg.fmax_hz);
  }

  const auto again = extract_f0_autocorr(wave, cfg);
  REQUIRE(again.f0_hz == track.f0_hz);
  REQUIRE(again.voiced == track.voiced);
}

TEST_CASE("extract_f0: rejects too-short input") {
  Waveform wave;
  wave.sample_rate_hz = 16000;
  wave.samples.assign(100, 0.1);
  REQUIRE_THROWS_AS(extract_f0_autocorr(wave), std::invalid_argument);
}

TEST_CASE("pcm helper produces loud frames above the gate") {
  TempDir dir("wavtone");
  const auto path = dir.path("tone.wav");
  test::write_bytes(path, test::wav_bytes({sine_pcm(220.0, 1.0, 16000, 0.5)}, 16000));
  const auto wave = read_wav(path);
  const auto track = extract_f0_autocorr(wave);
  REQUIRE(median_voiced_f0(track) == Approx(220.0).margin(3.0));
}
