// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_IO_UTIL_HPP
#define VOICEANON_IO_UTIL_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace voiceanon {

/// Locale-independent decimal rendering with 9 significant digits, the
/// printing convention for every numeric value this toolkit writes.
std::string format_sig9(double value);

/// Nearest double to the 9-significant-digit decimal rendering of value.
/// Applied before JSON serialisation so emitted numbers match the CSV
/// convention and reread files rewrite byte-identically.
double round_sig9(double value);

/// Locale-independent strtod; throws std::runtime_error on garbage.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and renames into place, so a failed run
/// never leaves a partial output behind.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace voiceanon

#endif  // VOICEANON_IO_UTIL_HPP
