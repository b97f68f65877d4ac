// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/prosody.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "test_util.hpp"
#include "voiceanon/rng.hpp"

using namespace voiceanon;
using voiceanon::test::TempDir;

namespace {

std::vector<PhonemeProsody> sample_sequence(std::size_t count, double pitch = 1.0,
                                            double energy = 1.0) {
  std::vector<PhonemeProsody> seq;
  seq.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    seq.push_back({"ph" + std::to_string(i), pitch, energy,
                   static_cast<std::int64_t>(1 + i % 7)});
  }
  return seq;
}

}  // namespace

TEST_CASE("preset ranges match the published grid") {
  const auto presets = preset_ranges();
  REQUIRE(presets.size() == 5);
  REQUIRE(presets.front().lo == 0.6);
  REQUIRE(presets.front().hi == 1.4);
  REQUIRE(presets[1].lo == 0.7);
  REQUIRE(presets[2].lo == 0.8);
  REQUIRE(presets[3].lo == 0.9);
  REQUIRE(presets.back().lo == 1.0);
  REQUIRE(presets.back().hi == 1.0);
}

TEST_CASE("degenerate range is the exact identity") {
  const auto seq = sample_sequence(50, 3.25, 0.5);
  const auto out = randomize_prosody(seq, {1.0, 1.0}, 99);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    REQUIRE(out[i].pitch == seq[i].pitch);
    REQUIRE(out[i].energy == seq[i].energy);
  }
}

TEST_CASE("multiplied values stay inside the half-open bound") {
  SeededRng value_rng(4);
  std::vector<PhonemeProsody> seq;
  for (int i = 0; i < 5000; ++i) {
    seq.push_back({"p", value_rng.uniform(0.1, 5.0), value_rng.uniform(0.1, 5.0), 1});
  }
  const MultiplierRange range{0.6, 1.4};
  const auto out = randomize_prosody(seq, range, 1234);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    REQUIRE(out[i].pitch >= range.lo * seq[i].pitch);
    REQUIRE(out[i].pitch < range.hi * seq[i].pitch);
    REQUIRE(out[i].energy >= range.lo * seq[i].energy);
    REQUIRE(out[i].energy < range.hi * seq[i].energy);
  }
}

TEST_CASE("zero input values stay zero") {
  const std::vector<PhonemeProsody> seq{{"sil", 0.0, 0.0, 3}};
  const auto out = randomize_prosody(seq, {0.6, 1.4}, 1);
  REQUIRE(out[0].pitch == 0.0);
  REQUIRE(out[0].energy == 0.0);
}

TEST_CASE("same seed reproduces the same randomization") {
  const auto seq = sample_sequence(200);
  const auto a = randomize_prosody(seq, {0.7, 1.3}, 31);
  const auto b = randomize_prosody(seq, {0.7, 1.3}, 31);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    REQUIRE(a[i].pitch == b[i].pitch);
    REQUIRE(a[i].energy == b[i].energy);
  }
}

TEST_CASE("ids and durations are never modified") {
  const auto seq = sample_sequence(64);
  const auto out = randomize_prosody(seq, {0.6, 1.4}, 8);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    REQUIRE(out[i].phoneme_id == seq[i].phoneme_id);
    REQUIRE(out[i].duration_frames == seq[i].duration_frames);
  }
}

TEST_CASE("pitch and energy multipliers are uncorrelated") {
  // Unit inputs expose the raw multipliers.
  const auto out = randomize_prosody(sample_sequence(10000), {0.6, 1.4}, 555);
  double mp = 0.0;
  double me = 0.0;
  for (const auto& p : out) {
    mp += p.pitch;
    me += p.energy;
  }
  mp /= out.size();
  me /= out.size();
  double cov = 0.0;
  double vp = 0.0;
  double ve = 0.0;
  for (const auto& p : out) {
    cov += (p.pitch - mp) * (p.energy - me);
    vp += (p.pitch - mp) * (p.pitch - mp);
    ve += (p.energy - me) * (p.energy - me);
  }
  const double corr = cov / std::sqrt(vp * ve);
  REQUIRE(std::abs(corr) < 0.05);
}

TEST_CASE("multipliers pass a 10-bin chi-square uniformity check") {
  const MultiplierRange range{0.7, 1.3};
  const auto out = randomize_prosody(sample_sequence(50000), range, 777);
  std::vector<int> bins(10, 0);
  for (const auto& p : out) {
    for (const double m : {p.pitch, p.energy}) {
      auto bin = static_cast<std::size_t>((m - range.lo) / (range.hi - range.lo) * 10.0);
      if (bin > 9) bin = 9;
      ++bins[bin];
    }
  }
  const double expected = 100000.0 / 10.0;
  double chi2 = 0.0;
  for (const int c : bins) chi2 += (c - expected) * (c - expected) / expected;
  REQUIRE(chi2 < 27.877);  // chi-square(9 dof) critical value at 0.001
}

TEST_CASE("invalid ranges and phonemes are rejected") {
  const auto seq = sample_sequence(1);
  REQUIRE_THROWS_AS(randomize_prosody(seq, {0.0, 1.0}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(randomize_prosody(seq, {1.4, 0.6}, 1), std::invalid_argument);
  const std::vector<PhonemeProsody> bad{{"p", -1.0, 1.0, 1}};
  REQUIRE_THROWS_AS(randomize_prosody(bad, {0.6, 1.4}, 1), std::invalid_argument);
  const std::vector<PhonemeProsody> zero_dur{{"p", 1.0, 1.0, 0}};
  REQUIRE_THROWS_AS(randomize_prosody(zero_dur, {0.6, 1.4}, 1), std::invalid_argument);
}

TEST_CASE("empty sequence is allowed") {
  REQUIRE(randomize_prosody({}, {0.6, 1.4}, 1).empty());
}

TEST_CASE("prosody csv round-trips and rewrites byte-identically") {
  TempDir dir("prosody");
  const auto seq = randomize_prosody(sample_sequence(40, 2.0, 0.25), {0.6, 1.4}, 6);
  const auto path = dir.path("prosody.csv");
  write_prosody_csv(seq, path);

  const auto reread = read_prosody_csv(path);
  REQUIRE(reread.size() == seq.size());
  const auto again = dir.path("prosody2.csv");
  write_prosody_csv(reread, again);
  REQUIRE(test::read_bytes(path) == test::read_bytes(again));
}

TEST_CASE("prosody csv reader names the offending line") {
  TempDir dir("prosodybad");
  const auto path = dir.path("bad.csv");
  test::write_bytes(path, "phoneme,pitch,energy,duration_frames\np,1.0,1.0,1\nq,-2,1.0,1\n");
  try {
    read_prosody_csv(path);
    FAIL("expected rejection");
  } catch (const std::runtime_error& e) {
    REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring(":3"));
    REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("pitch"));
  }

  const auto header = dir.path("header.csv");
  test::write_bytes(header, "a,b\n");
  REQUIRE_THROWS_WITH(read_prosody_csv(header),
                      Catch::Matchers::ContainsSubstring("header"));
}
