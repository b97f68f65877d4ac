// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/eval.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <set>

#include "test_util.hpp"
#include "voiceanon/rng.hpp"

using namespace voiceanon;
using voiceanon::test::TempDir;
using voiceanon::test::make_embedding;
using Catch::Approx;

namespace {

// Exhaustive sweep oracle, written against the same definition but with an
// independent code path: direct counting at every unique score plus a
// t-space interpolation at the sign change of FAR - FRR.
double eer_oracle(const std::vector<double>& genuine,
                  const std::vector<double>& impostor) {
  std::set<double> unique(genuine.begin(), genuine.end());
  unique.insert(impostor.begin(), impostor.end());
  std::vector<double> ts(unique.begin(), unique.end());

  auto far = [&](double t) {
    std::size_t n = 0;
    for (const double s : impostor) n += (s >= t);
    return static_cast<double>(n) / static_cast<double>(impostor.size());
  };
  auto frr = [&](double t) {
    std::size_t n = 0;
    for (const double s : genuine) n += (s < t);
    return static_cast<double>(n) / static_cast<double>(genuine.size());
  };

  struct Point {
    double t, far, frr;
  };
  std::vector<Point> points;
  for (const double t : ts) points.push_back({t, far(t), frr(t)});
  points.push_back({ts.back() + 1.0, 0.0, 1.0});  // above every score

  for (std::size_t i = 0; i < points.size(); ++i) {
    const double diff = points[i].far - points[i].frr;
    if (diff > 0.0) continue;
    if (diff == 0.0) return 100.0 * points[i].far;
    const Point& prev = points[i - 1];
    const double prev_diff = prev.far - prev.frr;
    const double t_star = prev.t + (points[i].t - prev.t) * prev_diff /
                                       (prev_diff - diff);
    const double frac = (t_star - prev.t) / (points[i].t - prev.t);
    return 100.0 * (prev.far + frac * (points[i].far - prev.far));
  }
  FAIL("oracle found no crossing");
  return -1.0;
}

std::vector<double> random_scores(SeededRng& rng, std::size_t count) {
  std::vector<double> scores(count);
  for (auto& s : scores) s = rng.normal();
  return scores;
}

}  // namespace

TEST_CASE("compute_eer: frozen examples") {
  REQUIRE(compute_eer({0.9, 0.8}, {0.1, 0.2}).eer_percent == 0.0);
  REQUIRE(compute_eer({0.1, 0.9}, {0.1, 0.9}).eer_percent == 50.0);
  // Oracle value computed ahead of the implementation: 100/3.
  const auto toy = compute_eer({0.8, 0.6, 0.4}, {0.7, 0.3, 0.2});
  REQUIRE(toy.eer_percent == Approx(100.0 / 3.0).margin(1e-9));
  REQUIRE(toy.n_genuine == 3);
  REQUIRE(toy.n_impostor == 3);
}

TEST_CASE("compute_eer: matches the exhaustive oracle on random trial sets") {
  SeededRng rng(2025);
  for (int rep = 0; rep < 200; ++rep) {
    const auto n_gen = 5 + rng.uniform_int(496);
    const auto n_imp = 5 + rng.uniform_int(496);
    std::vector<double> genuine(n_gen), impostor(n_imp);
    const double separation = rng.uniform(0.0, 2.0);
    for (auto& s : genuine) s = rng.normal() + separation;
    for (auto& s : impostor) s = rng.normal();
    const double eer = compute_eer(genuine, impostor).eer_percent;
    REQUIRE(eer == Approx(eer_oracle(genuine, impostor)).margin(1e-9));
  }
}

TEST_CASE("compute_eer: invariant under strictly increasing transforms") {
  SeededRng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const auto genuine = random_scores(rng, 40 + rng.uniform_int(100));
    const auto impostor = random_scores(rng, 40 + rng.uniform_int(100));
    const double base = compute_eer(genuine, impostor).eer_percent;

    auto warp = [](std::vector<double> v) {
      for (auto& s : v) s = std::tanh(0.5 * s) * 3.0 + 0.01 * s;
      return v;
    };
    REQUIRE(compute_eer(warp(genuine), warp(impostor)).eer_percent == base);
  }
}

TEST_CASE("compute_eer: symmetric under label swap with score negation") {
  SeededRng rng(77);
  for (int rep = 0; rep < 50; ++rep) {
    const auto genuine = random_scores(rng, 20 + rng.uniform_int(80));
    const auto impostor = random_scores(rng, 20 + rng.uniform_int(80));
    const double forward = compute_eer(genuine, impostor).eer_percent;

    std::vector<double> swapped_genuine, swapped_impostor;
    for (const double s : impostor) swapped_genuine.push_back(-s);
    for (const double s : genuine) swapped_impostor.push_back(-s);
    const double backward = compute_eer(swapped_genuine, swapped_impostor).eer_percent;
    REQUIRE(forward == Approx(backward).margin(1e-9));
  }
}

TEST_CASE("compute_eer: identically distributed scores sit near 50%") {
  SeededRng rng(404);
  const auto genuine = random_scores(rng, 10000);
  const auto impostor = random_scores(rng, 10000);
  REQUIRE(compute_eer(genuine, impostor).eer_percent == Approx(50.0).margin(2.0));
}

TEST_CASE("compute_eer: rejects empty and non-finite input") {
  REQUIRE_THROWS_AS(compute_eer({}, {0.1}), std::invalid_argument);
  REQUIRE_THROWS_AS(compute_eer({0.1}, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(compute_eer({std::nan("")}, {0.1}), std::invalid_argument);
}

TEST_CASE("classify_condition: privacy bands") {
  REQUIRE(classify_condition(12.09) == ConditionBand::eer1);
  REQUIRE(classify_condition(21.47) == ConditionBand::eer2);
  REQUIRE(classify_condition(38.56) == ConditionBand::eer3);
  REQUIRE(classify_condition(42.46) == ConditionBand::eer4);
  REQUIRE(classify_condition(0.0) == ConditionBand::below_range);
  REQUIRE(classify_condition(9.999) == ConditionBand::below_range);

  // lower-inclusive band edges
  REQUIRE(classify_condition(10.0) == ConditionBand::eer1);
  REQUIRE(classify_condition(20.0) == ConditionBand::eer2);
  REQUIRE(classify_condition(30.0) == ConditionBand::eer3);
  REQUIRE(classify_condition(40.0) == ConditionBand::eer4);
  REQUIRE(classify_condition(100.0) == ConditionBand::eer4);

  REQUIRE_THROWS_AS(classify_condition(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(classify_condition(100.1), std::invalid_argument);
}

TEST_CASE("classify_condition: total monotone step function") {
  ConditionBand previous = classify_condition(0.0);
  for (double e = 0.0; e <= 100.0; e += 0.25) {
    const auto band = classify_condition(e);
    REQUIRE(static_cast<int>(band) >= static_cast<int>(previous));
    previous = band;
  }
  REQUIRE(std::string(condition_name(ConditionBand::eer1)) == "EER1");
  REQUIRE(std::string(condition_name(ConditionBand::below_range)) == "below_range");
}

TEST_CASE("score_trials: hand-built 2-D toy set") {
  EmbeddingPool enrol;
  enrol.dimension = 2;
  enrol.entries.push_back(make_embedding("a", Gender::M, {1, 0}, "e1"));
  enrol.entries.push_back(make_embedding("b", Gender::F, {0, 1}, "e2"));

  EmbeddingPool test_pool;
  test_pool.dimension = 2;
  test_pool.entries.push_back(make_embedding("a", Gender::M, {1, 0}, "t1"));
  test_pool.entries.push_back(make_embedding("b", Gender::F, {1, 1}, "t2"));

  const std::vector<Trial> trials{{"e1", "t1", TrialLabel::genuine},
                                  {"e2", "t1", TrialLabel::impostor},
                                  {"e1", "t2", TrialLabel::impostor}};
  const auto scored = score_trials(trials, enrol, test_pool);
  REQUIRE(scored.size() == 3);
  REQUIRE(scored[0].score == Approx(1.0).margin(1e-12));
  REQUIRE(scored[1].score == Approx(0.0).margin(1e-12));
  REQUIRE(scored[2].score == Approx(1.0 / std::sqrt(2.0)).margin(1e-12));

  const std::vector<Trial> missing{{"nope", "t1", TrialLabel::genuine}};
  REQUIRE_THROWS_WITH(score_trials(missing, enrol, test_pool),
                      Catch::Matchers::ContainsSubstring("nope"));
}

TEST_CASE("trials csv: round-trip and diagnostics") {
  TempDir dir("trials");
  const std::vector<Trial> trials{{"e1", "t1", TrialLabel::genuine},
                                  {"e2", "t9", TrialLabel::impostor}};
  const auto path = dir.path("trials.csv");
  write_trials_csv(trials, path);
  const auto reread = read_trials_csv(path);
  REQUIRE(reread.size() == 2);
  REQUIRE(reread[0].enrol_id == "e1");
  REQUIRE(reread[1].label == TrialLabel::impostor);

  const auto bad = dir.path("bad.csv");
  test::write_bytes(bad, "enrol_id,test_id,label\ne1,t1,maybe\n");
  try {
    read_trials_csv(bad);
    FAIL("expected rejection");
  } catch (const std::runtime_error& e) {
    REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring(":2"));
    REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring("maybe"));
  }
}
