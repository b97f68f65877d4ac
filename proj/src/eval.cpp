// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "voiceanon/io_util.hpp"

namespace voiceanon {

namespace {

std::unordered_map<std::string, std::size_t> build_index(
    const EmbeddingPool& pool, const char* side) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& key = entry_key(pool.entries[i]);
    if (!index.emplace(key, i).second) {
      throw std::runtime_error(std::string("ambiguous ") + side + " id: " + key);
    }
  }
  return index;
}

}  // namespace

std::vector<ScoredTrial> score_trials(std::span<const Trial> trials,
                                      const EmbeddingPool& enrol,
                                      const EmbeddingPool& test) {
  if (enrol.dimension != test.dimension) {
    throw std::invalid_argument("enrol/test pool dimensions differ");
  }
  const auto enrol_index = build_index(enrol, "enrol");
  const auto test_index = build_index(test, "test");

  std::vector<ScoredTrial> out;
  out.reserve(trials.size());
  for (const auto& trial : trials) {
    const auto e = enrol_index.find(trial.enrol_id);
    if (e == enrol_index.end()) {
      throw std::runtime_error("unresolved enrol id: " + trial.enrol_id);
    }
    const auto t = test_index.find(trial.test_id);
    if (t == test_index.end()) {
      throw std::runtime_error("unresolved test id: " + trial.test_id);
    }
    out.push_back({trial, cosine_similarity(enrol.entries[e->second].vector,
                                            test.entries[t->second].vector)});
  }
  return out;
}

void split_scores(std::span<const ScoredTrial> scored,
                  std::vector<double>& genuine, std::vector<double>& impostor) {
  for (const auto& s : scored) {
    (s.trial.label == TrialLabel::genuine ? genuine : impostor).push_back(s.score);
  }
}

EerResult compute_eer(std::vector<double> genuine_scores,
                      std::vector<double> impostor_scores) {
  if (genuine_scores.empty() || impostor_scores.empty()) {
    throw std::invalid_argument("empty score set");
  }
  for (const double s : genuine_scores) {
    if (!std::isfinite(s)) throw std::invalid_argument("non-finite score");
  }
  for (const double s : impostor_scores) {
    if (!std::isfinite(s)) throw std::invalid_argument("non-finite score");
  }

  std::sort(genuine_scores.begin(), genuine_scores.end());
  std::sort(impostor_scores.begin(), impostor_scores.end());
  const double n_gen = static_cast<double>(genuine_scores.size());
  const double n_imp = static_cast<double>(impostor_scores.size());

  std::vector<double> thresholds;
  thresholds.reserve(genuine_scores.size() + impostor_scores.size());
  std::merge(genuine_scores.begin(), genuine_scores.end(),
             impostor_scores.begin(), impostor_scores.end(),
             std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  // FAR(t) = P(impostor >= t), FRR(t) = P(genuine < t). FAR - FRR is
  // non-increasing in t, starts at +1, so the first non-positive point
  // brackets the crossing.
  auto far_at = [&](double t) {
    const auto it = std::lower_bound(impostor_scores.begin(),
                                     impostor_scores.end(), t);
    return static_cast<double>(impostor_scores.end() - it) / n_imp;
  };
  auto frr_at = [&](double t) {
    const auto it = std::lower_bound(genuine_scores.begin(),
                                     genuine_scores.end(), t);
    return static_cast<double>(it - genuine_scores.begin()) / n_gen;
  };

  EerResult result;
  result.n_genuine = static_cast<std::int64_t>(genuine_scores.size());
  result.n_impostor = static_cast<std::int64_t>(impostor_scores.size());

  double prev_t = thresholds.front();
  double prev_far = 1.0;
  double prev_frr = 0.0;
  bool have_prev = false;
  for (std::size_t i = 0; i <= thresholds.size(); ++i) {
    double t, far, frr;
    if (i < thresholds.size()) {
      t = thresholds[i];
      far = far_at(t);
      frr = frr_at(t);
    } else {
      // Virtual endpoint above every score: all rejected.
      t = thresholds.back();
      far = 0.0;
      frr = 1.0;
    }
    const double diff = far - frr;
    if (diff <= 0.0) {
      if (diff == 0.0) {
        result.eer_percent = 100.0 * far;
        result.threshold = t;
        return result;
      }
      if (!have_prev) break;  // cannot happen: diff(min score) = 1
      const double prev_diff = prev_far - prev_frr;
      const double lambda = prev_diff / (prev_diff - diff);
      result.eer_percent = 100.0 * (prev_far + lambda * (far - prev_far));
      result.threshold = prev_t + lambda * (t - prev_t);
      return result;
    }
    prev_t = t;
    prev_far = far;
    prev_frr = frr;
    have_prev = true;
  }
  throw std::logic_error("EER sweep found no crossing");
}

ConditionBand classify_condition(double eer_percent) {
  if (!(eer_percent >= 0.0 && eer_percent <= 100.0)) {
    throw std::invalid_argument("EER must lie in [0, 100]");
  }
  if (eer_percent < 10.0) return ConditionBand::below_range;
  if (eer_percent < 20.0) return ConditionBand::eer1;
  if (eer_percent < 30.0) return ConditionBand::eer2;
  if (eer_percent < 40.0) return ConditionBand::eer3;
  return ConditionBand::eer4;
}

const char* condition_name(ConditionBand band) {
  switch (band) {
    case ConditionBand::below_range: return "below_range";
    case ConditionBand::eer1: return "EER1";
    case ConditionBand::eer2: return "EER2";
    case ConditionBand::eer3: return "EER3";
    case ConditionBand::eer4: return "EER4";
  }
  throw std::logic_error("unknown condition band");
}

std::vector<Trial> read_trials_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Trial> out;

  auto fail = [&](const std::string& msg) -> std::runtime_error {
    return std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                              ": " + msg);
  };

  if (!std::getline(stream, line)) throw std::runtime_error(path.string() + ": empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "enrol_id,test_id,label") {
    throw fail("expected header 'enrol_id,test_id,label'");
  }
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos
                                            : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        line.find(',', c2 + 1) != std::string::npos) {
      throw fail("expected 3 fields");
    }
    Trial trial;
    trial.enrol_id = line.substr(0, c1);
    trial.test_id = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string label = line.substr(c2 + 1);
    if (label == "genuine") trial.label = TrialLabel::genuine;
    else if (label == "impostor") trial.label = TrialLabel::impostor;
    else throw fail("label must be genuine|impostor, got '" + label + "'");
    if (trial.enrol_id.empty() || trial.test_id.empty()) throw fail("empty id");
    out.push_back(std::move(trial));
  }
  return out;
}

void write_trials_csv(std::span<const Trial> trials,
                      const std::filesystem::path& path) {
  std::string text = "enrol_id,test_id,label\n";
  for (const auto& trial : trials) {
    text += trial.enrol_id;
    text += ',';
    text += trial.test_id;
    text += ',';
    text += trial.label == TrialLabel::genuine ? "genuine" : "impostor";
    text += '\n';
  }
  write_text_atomic(path, text);
}

void write_scores_csv(std::span<const ScoredTrial> scored,
                      const std::filesystem::path& path) {
  std::string text = "enrol_id,test_id,score\n";
  for (const auto& s : scored) {
    text += s.trial.enrol_id;
    text += ',';
    text += s.trial.test_id;
    text += ',';
    text += format_sig9(s.score);
    text += '\n';
  }
  write_text_atomic(path, text);
}

}  // namespace voiceanon
