// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0
//
// Batch CLI over the voiceanon library. Every subcommand is a pure
// function of (input files, flags, --seed): reruns produce byte-identical
// outputs. Exit codes: 0 success, 1 usage error, 2 data/validation error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voiceanon/anonymize.hpp"
#include "voiceanon/embedding.hpp"
#include "voiceanon/eval.hpp"
#include "voiceanon/f0_track.hpp"
#include "voiceanon/f0_transforms.hpp"
#include "voiceanon/io_util.hpp"
#include "voiceanon/pitch.hpp"
#include "voiceanon/population.hpp"
#include "voiceanon/prosody.hpp"
#include "voiceanon/rng.hpp"
#include "voiceanon/wav.hpp"

namespace {

using namespace voiceanon;

nlohmann::json summary_to_json(const F0Summary& summary) {
  nlohmann::json doc;
  doc["voiced_ratio"] = round_sig9(summary.voiced_ratio);
  if (summary.stats) {
    doc["mean_hz"] = round_sig9(summary.stats->mean_hz);
    doc["std_hz"] = round_sig9(summary.stats->std_hz);
    doc["min_hz"] = round_sig9(summary.stats->min_hz);
    doc["max_hz"] = round_sig9(summary.stats->max_hz);
  }
  return doc;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    values.push_back(parse_double(std::string_view(text).substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.empty()) throw std::runtime_error("empty grid");
  return values;
}

MultiplierRange parse_range_item(const std::string& item) {
  const auto colon = item.find(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("preset item '" + item + "' must be lo:hi");
  }
  MultiplierRange range{parse_double(item.substr(0, colon)),
                        parse_double(item.substr(colon + 1))};
  validate(range);
  return range;
}

std::vector<MultiplierRange> parse_preset_grid(const std::string& text) {
  std::vector<MultiplierRange> ranges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    ranges.push_back(parse_range_item(text.substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (ranges.empty()) throw std::runtime_error("empty grid");
  return ranges;
}

void require_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw std::runtime_error("file not found: " + path.string());
  }
}

// ---------------------------------------------------------------------------
// f0-transform

struct F0TransformArgs {
  std::string input;
  std::string output;
  std::string summary;
  double alpha = 0.0;
  std::size_t window = 32;
  std::optional<double> snr_db;
  double floor_hz = 10.0;
  std::uint64_t seed = 0;
};

int run_f0_transform(const F0TransformArgs& args) {
  require_file(args.input);
  const F0Track input = read_f0_track(args.input);

  F0Track output = mean_reversion_f0(input, {args.alpha, args.window});
  if (args.snr_db) {
    output = awgn_f0(output,
                     {*args.snr_db, args.floor_hz, derive_seed(args.seed, "f0.awgn")});
  }
  write_f0_track(output, args.output);

  nlohmann::json summary;
  summary["before"] = summary_to_json(f0_summary(input));
  summary["after"] = summary_to_json(f0_summary(output));
  const std::string summary_path =
      args.summary.empty() ? args.output + ".summary.json" : args.summary;
  write_text_atomic(summary_path, summary.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// anon-embed

struct AnonEmbedArgs {
  std::string pool;
  std::string input;
  std::string output;
  std::string strategy = "random";
  bool cross_gender = false;
  bool accept_above = false;
  std::optional<double> noise_scale;
  std::size_t k_far = 200;
  std::size_t k_select = 100;
  double distance_threshold = 0.3;
  int max_attempts = 30;
  std::size_t avg_count = 10;
  std::uint64_t seed = 0;
};

int run_anon_embed(const AnonEmbedArgs& args) {
  require_file(args.pool);
  require_file(args.input);
  const EmbeddingPool pool = read_embedding_pool(args.pool);
  const EmbeddingPool sources = read_embedding_pool(args.input);
  if (!pool.entries.empty() && !sources.entries.empty() &&
      pool.dimension != sources.dimension) {
    throw std::runtime_error("pool/input dimensions differ");
  }

  AnonSpec spec;
  spec.strategy = parse_strategy(args.strategy);
  spec.cross_gender = args.cross_gender;
  spec.noise_scale = args.noise_scale;
  spec.farthest.k_far = args.k_far;
  spec.farthest.k_select = args.k_select;
  spec.rejection.distance_threshold = args.distance_threshold;
  spec.rejection.max_attempts = args.max_attempts;
  spec.rejection.accept_when =
      args.accept_above ? AcceptWhen::distance_above : AcceptWhen::distance_below;
  spec.generator_avg_count = args.avg_count;

  EmbeddingPool out;
  out.dimension = sources.dimension;
  for (const auto& source : sources.entries) {
    SpeakerEmbedding entry = source;
    entry.vector = anonymize_utterance(
        source, pool, spec, derive_seed(args.seed, "anon:" + entry_key(source)));
    out.entries.push_back(std::move(entry));
  }
  write_embedding_pool(out, args.output);
  return 0;
}

// ---------------------------------------------------------------------------
// eval-eer

struct EvalEerArgs {
  std::string trials;
  std::string enrol;
  std::string test;
  std::string output;
  std::string scores;
};

nlohmann::json eer_report(const EerResult& eer) {
  nlohmann::json report;
  report["eer_percent"] = round_sig9(eer.eer_percent);
  report["threshold"] = round_sig9(eer.threshold);
  report["n_genuine"] = eer.n_genuine;
  report["n_impostor"] = eer.n_impostor;
  report["condition"] = condition_name(classify_condition(eer.eer_percent));
  return report;
}

int run_eval_eer(const EvalEerArgs& args) {
  require_file(args.trials);
  require_file(args.enrol);
  require_file(args.test);
  const auto trials = read_trials_csv(args.trials);
  const auto enrol = read_embedding_pool(args.enrol);
  const auto test = read_embedding_pool(args.test);

  const auto scored = score_trials(trials, enrol, test);
  const std::string scores_path =
      args.scores.empty() ? args.output + ".scores.csv" : args.scores;
  write_scores_csv(scored, scores_path);

  std::vector<double> genuine, impostor;
  split_scores(scored, genuine, impostor);
  const EerResult eer = compute_eer(std::move(genuine), std::move(impostor));
  write_text_atomic(args.output, eer_report(eer).dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// gen-population

struct GenPopulationArgs {
  SyntheticPopulationConfig cfg;
  std::string out_enrol;
  std::string out_test;
  std::string out_trials;
};

int run_gen_population(const GenPopulationArgs& args) {
  const Population population = generate_population(args.cfg);
  write_embedding_pool(population.enrol, args.out_enrol);
  write_embedding_pool(population.test, args.out_test);
  write_trials_csv(population.trials, args.out_trials);
  return 0;
}

// ---------------------------------------------------------------------------
// extract-f0

struct ExtractF0Args {
  std::string input;
  std::string output;
  PitchConfig cfg;
};

int run_extract_f0(const ExtractF0Args& args) {
  require_file(args.input);
  const Waveform wave = read_wav(args.input);
  write_f0_track(extract_f0_autocorr(wave, args.cfg), args.output);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string alpha;
  std::string snr_db;
  std::string noise_scale;
  std::string preset;
  std::string input;
  std::string output;
  std::size_t window = 32;
  double fixed_alpha = 0.75;
  double floor_hz = 10.0;
  SyntheticPopulationConfig pop;
  std::size_t n_seeds = 5;
  std::uint64_t seed = 0;
};

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double voiced_std(const F0Track& track) {
  const auto summary = f0_summary(track);
  return summary.stats ? summary.stats->std_hz : 0.0;
}

int run_sweep(const SweepArgs& args) {
  const int grids = !args.alpha.empty() + !args.snr_db.empty() +
                    !args.noise_scale.empty() + !args.preset.empty();
  if (grids != 1) {
    std::cerr << "sweep: give exactly one grid among --alpha, --snr-db, "
                 "--noise-scale, --preset\n";
    return 1;
  }

  std::string csv;
  if (!args.alpha.empty()) {
    require_file(args.input);
    const F0Track input = read_f0_track(args.input);
    csv = "parameter,std_hz\n";
    for (const double alpha : parse_grid(args.alpha)) {
      const F0Track out = mean_reversion_f0(input, {alpha, args.window});
      csv += format_sig9(alpha) + "," + format_sig9(voiced_std(out)) + "\n";
    }
  } else if (!args.snr_db.empty()) {
    require_file(args.input);
    const F0Track input = read_f0_track(args.input);
    const F0Track reverted =
        mean_reversion_f0(input, {args.fixed_alpha, args.window});
    csv = "parameter,std_hz\n";
    const auto grid = parse_grid(args.snr_db);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const F0Track out =
          awgn_f0(reverted, {grid[i], args.floor_hz,
                             derive_seed(args.seed, "sweep.awgn:" + std::to_string(i))});
      csv += format_sig9(grid[i]) + "," + format_sig9(voiced_std(out)) + "\n";
    }
  } else if (!args.preset.empty()) {
    require_file(args.input);
    const auto phonemes = read_prosody_csv(args.input);
    csv = "parameter,std_hz\n";
    const auto grid = parse_preset_grid(args.preset);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto randomized =
          randomize_prosody(phonemes, grid[i],
                            derive_seed(args.seed, "sweep.preset:" + std::to_string(i)));
      double sum = 0.0;
      for (const auto& p : randomized) sum += p.pitch;
      const double mean = randomized.empty() ? 0.0 : sum / randomized.size();
      double var = 0.0;
      for (const auto& p : randomized) var += (p.pitch - mean) * (p.pitch - mean);
      const double stddev =
          randomized.empty() ? 0.0 : std::sqrt(var / randomized.size());
      csv += format_sig9(grid[i].lo) + ":" + format_sig9(grid[i].hi) + "," +
             format_sig9(stddev) + "\n";
    }
  } else {
    // Embedding AWGN grid: median EER over n_seeds seeded experiments per
    // point; each experiment regenerates the population under its own seed.
    csv = "parameter,eer_percent\n";
    for (const double scale : parse_grid(args.noise_scale)) {
      std::optional<AnonSpec> spec;
      if (scale > 0.0) {
        spec.emplace();
        spec->strategy = AnonStrategy::none;
        spec->noise_scale = scale;
      }
      std::vector<double> eers;
      for (std::size_t k = 0; k < args.n_seeds; ++k) {
        SyntheticPopulationConfig cfg = args.pop;
        cfg.seed = derive_seed(args.seed, "experiment:" + std::to_string(k));
        eers.push_back(
            run_attack_experiment(cfg, spec, derive_seed(cfg.seed, "attack"))
                .eer_percent);
      }
      csv += format_sig9(scale) + "," + format_sig9(median(std::move(eers))) + "\n";
    }
  }
  write_text_atomic(args.output, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded voice-anonymization primitives and privacy evaluation"};
  app.require_subcommand(1);

  F0TransformArgs f0_args;
  auto* f0 = app.add_subcommand(
      "f0-transform", "Mean-reversion blend and optional AWGN on an F0 track");
  f0->add_option("--input,-i", f0_args.input, "input track JSON")->required();
  f0->add_option("--output,-o", f0_args.output, "output track JSON")->required();
  f0->add_option("--summary", f0_args.summary,
                 "summary JSON path (default <output>.summary.json)");
  f0->add_option("--alpha", f0_args.alpha, "blend weight in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  f0->add_option("--window", f0_args.window, "moving-average frame count")
      ->check(CLI::PositiveNumber);
  f0->add_option("--snr-db", f0_args.snr_db, "apply AWGN at this SNR (dB)");
  f0->add_option("--floor-hz", f0_args.floor_hz, "post-noise F0 floor")
      ->check(CLI::PositiveNumber);
  f0->add_option("--seed", f0_args.seed, "global seed");
  std::string f0_format = "json";
  f0->add_option("--format", f0_format, "output format")
      ->check(CLI::IsMember({"json"}));

  AnonEmbedArgs anon_args;
  auto* anon = app.add_subcommand("anon-embed",
                                  "Anonymize speaker embeddings against a pool");
  anon->add_option("--pool", anon_args.pool, "target pool JSONL")->required();
  anon->add_option("--input,-i", anon_args.input, "source embeddings JSONL")->required();
  anon->add_option("--output,-o", anon_args.output, "anonymized JSONL")->required();
  anon->add_option("--strategy", anon_args.strategy,
                   "none | random | farthest | rejection");
  anon->add_flag("--cross-gender", anon_args.cross_gender,
                 "restrict pool to the opposite gender");
  anon->add_option("--noise-scale", anon_args.noise_scale,
                   "embedding AWGN per-dimension std")
      ->check(CLI::NonNegativeNumber);
  anon->add_option("--k-far", anon_args.k_far, "farthest candidate set size")
      ->check(CLI::PositiveNumber);
  anon->add_option("--k-select", anon_args.k_select, "candidates averaged")
      ->check(CLI::PositiveNumber);
  anon->add_option("--distance-threshold", anon_args.distance_threshold,
                   "rejection acceptance threshold");
  anon->add_option("--max-attempts", anon_args.max_attempts, "rejection attempts")
      ->check(CLI::PositiveNumber);
  anon->add_flag("--accept-above", anon_args.accept_above,
                 "accept when distance exceeds the threshold");
  anon->add_option("--avg-count", anon_args.avg_count,
                   "pool entries averaged by the reference generator")
      ->check(CLI::PositiveNumber);
  anon->add_option("--seed", anon_args.seed, "global seed");
  std::string anon_format = "jsonl";
  anon->add_option("--format", anon_format, "output format")
      ->check(CLI::IsMember({"jsonl"}));

  EvalEerArgs eval_args;
  auto* eval = app.add_subcommand("eval-eer",
                                  "Score trials and report EER + condition band");
  eval->add_option("--trials", eval_args.trials, "trials CSV")->required();
  eval->add_option("--enrol", eval_args.enrol, "enrol pool JSONL")->required();
  eval->add_option("--test", eval_args.test, "test pool JSONL")->required();
  eval->add_option("--output,-o", eval_args.output, "EER report JSON")->required();
  eval->add_option("--scores", eval_args.scores,
                   "scores CSV path (default <output>.scores.csv)");
  std::string eval_format = "json";
  eval->add_option("--format", eval_format, "report format")
      ->check(CLI::IsMember({"json"}));

  GenPopulationArgs pop_args;
  auto* pop = app.add_subcommand("gen-population",
                                 "Generate a synthetic verification population");
  pop->add_option("--speakers", pop_args.cfg.n_speakers, "speaker count")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  pop->add_option("--utts", pop_args.cfg.utterances_per_speaker,
                  "utterances per speaker per side")
      ->check(CLI::PositiveNumber);
  pop->add_option("--dim", pop_args.cfg.dimension, "embedding dimension")
      ->check(CLI::PositiveNumber);
  pop->add_option("--within-std", pop_args.cfg.within_speaker_std,
                  "within-speaker noise std")
      ->check(CLI::NonNegativeNumber);
  pop->add_option("--gender-split", pop_args.cfg.gender_split,
                  "fraction of speakers assigned gender M")
      ->check(CLI::Range(0.0, 1.0));
  pop->add_option("--seed", pop_args.cfg.seed, "global seed");
  pop->add_option("--out-enrol", pop_args.out_enrol, "enrol pool JSONL")->required();
  pop->add_option("--out-test", pop_args.out_test, "test pool JSONL")->required();
  pop->add_option("--out-trials", pop_args.out_trials, "trials CSV")->required();

  ExtractF0Args extract_args;
  auto* extract = app.add_subcommand("extract-f0",
                                     "Autocorrelation F0 extraction from WAV");
  extract->add_option("--input,-i", extract_args.input, "input WAV")->required();
  extract->add_option("--output,-o", extract_args.output, "output track JSON")
      ->required();
  extract->add_option("--frame-ms", extract_args.cfg.frame_ms, "analysis frame")
      ->check(CLI::PositiveNumber);
  extract->add_option("--hop-ms", extract_args.cfg.hop_ms, "hop size")
      ->check(CLI::PositiveNumber);
  extract->add_option("--fmin", extract_args.cfg.fmin_hz, "lowest F0")
      ->check(CLI::PositiveNumber);
  extract->add_option("--fmax", extract_args.cfg.fmax_hz, "highest F0")
      ->check(CLI::PositiveNumber);
  extract->add_option("--voicing-threshold", extract_args.cfg.voicing_threshold,
                      "peak correlation gate");
  std::string extract_format = "json";
  extract->add_option("--format", extract_format, "output format")
      ->check(CLI::IsMember({"json"}));

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Run one-parameter grids and emit a plot-ready CSV");
  sweep->add_option("--alpha", sweep_args.alpha, "comma list of blend weights");
  sweep->add_option("--snr-db", sweep_args.snr_db, "comma list of SNRs (dB)");
  sweep->add_option("--noise-scale", sweep_args.noise_scale,
                    "comma list of embedding AWGN scales");
  sweep->add_option("--preset", sweep_args.preset,
                    "comma list of lo:hi multiplier ranges");
  sweep->add_option("--input,-i", sweep_args.input,
                    "track JSON (alpha/snr-db) or prosody CSV (preset)");
  sweep->add_option("--output,-o", sweep_args.output, "output CSV")->required();
  sweep->add_option("--window", sweep_args.window, "moving-average frame count")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--fixed-alpha", sweep_args.fixed_alpha,
                    "blend weight used by --snr-db sweeps")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--floor-hz", sweep_args.floor_hz, "post-noise F0 floor")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--speakers", sweep_args.pop.n_speakers, "population speakers")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  sweep->add_option("--utts", sweep_args.pop.utterances_per_speaker,
                    "utterances per speaker")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--dim", sweep_args.pop.dimension, "embedding dimension")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--within-std", sweep_args.pop.within_speaker_std,
                    "within-speaker noise std")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--seeds", sweep_args.n_seeds, "experiments per grid point")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_args.seed, "global seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (f0->parsed()) return run_f0_transform(f0_args);
    if (anon->parsed()) return run_anon_embed(anon_args);
    if (eval->parsed()) return run_eval_eer(eval_args);
    if (pop->parsed()) return run_gen_population(pop_args);
    if (extract->parsed()) return run_extract_f0(extract_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
