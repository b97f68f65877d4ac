// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/prosody.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "voiceanon/io_util.hpp"
#include "voiceanon/rng.hpp"

namespace voiceanon {

void validate(const PhonemeProsody& phoneme, std::size_t index) {
  const std::string where = "phoneme[" + std::to_string(index) + "]";
  if (!(std::isfinite(phoneme.pitch) && phoneme.pitch >= 0.0)) {
    throw std::invalid_argument(where + ": pitch must be finite and >= 0");
  }
  if (!(std::isfinite(phoneme.energy) && phoneme.energy >= 0.0)) {
    throw std::invalid_argument(where + ": energy must be finite and >= 0");
  }
  if (phoneme.duration_frames < 1) {
    throw std::invalid_argument(where + ": duration_frames must be >= 1");
  }
}

void validate(const MultiplierRange& range) {
  if (!(range.lo > 0.0 && range.lo <= range.hi && std::isfinite(range.hi))) {
    throw std::invalid_argument("multiplier range requires 0 < lo <= hi");
  }
}

std::vector<PhonemeProsody> randomize_prosody(std::span<const PhonemeProsody> seq,
                                              const MultiplierRange& range,
                                              std::uint64_t seed) {
  validate(range);
  for (std::size_t i = 0; i < seq.size(); ++i) validate(seq[i], i);

  SeededRng rng(seed);
  std::vector<PhonemeProsody> out(seq.begin(), seq.end());
  for (auto& phoneme : out) {
    phoneme.pitch *= rng.uniform(range.lo, range.hi);
    phoneme.energy *= rng.uniform(range.lo, range.hi);
  }
  return out;
}

std::vector<MultiplierRange> preset_ranges() {
  return {{0.6, 1.4}, {0.7, 1.3}, {0.8, 1.2}, {0.9, 1.1}, {1.0, 1.0}};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::vector<PhonemeProsody> read_prosody_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<PhonemeProsody> out;

  auto fail = [&](const std::string& msg) -> std::runtime_error {
    return std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                              ": " + msg);
  };

  if (!std::getline(stream, line)) throw std::runtime_error(path.string() + ": empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "phoneme,pitch,energy,duration_frames") {
    throw fail("expected header 'phoneme,pitch,energy,duration_frames'");
  }
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw fail("expected 4 fields");
    PhonemeProsody phoneme;
    phoneme.phoneme_id = fields[0];
    try {
      phoneme.pitch = parse_double(fields[1]);
      phoneme.energy = parse_double(fields[2]);
      phoneme.duration_frames = parse_int(fields[3]);
    } catch (const std::runtime_error& e) {
      throw fail(e.what());
    }
    try {
      validate(phoneme, out.size());
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
    out.push_back(std::move(phoneme));
  }
  return out;
}

void write_prosody_csv(std::span<const PhonemeProsody> seq,
                       const std::filesystem::path& path) {
  std::string text = "phoneme,pitch,energy,duration_frames\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    validate(seq[i], i);
    if (seq[i].phoneme_id.find(',') != std::string::npos) {
      throw std::invalid_argument("phoneme[" + std::to_string(i) +
                                  "]: id must not contain a comma");
    }
    text += seq[i].phoneme_id;
    text += ',';
    text += format_sig9(seq[i].pitch);
    text += ',';
    text += format_sig9(seq[i].energy);
    text += ',';
    text += std::to_string(seq[i].duration_frames);
    text += '\n';
  }
  write_text_atomic(path, text);
}

}  // namespace voiceanon
