// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#include "voiceanon/wav.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

#include "voiceanon/io_util.hpp"

namespace voiceanon {

namespace {

class ByteReader {
 public:
  ByteReader(const std::string& data, const std::string& name)
      : data_(data), name_(name) {}

  std::uint32_t u32() {
    need(4, "u32");
    std::uint32_t v = 0;
    std::memcpy(&v, data_.data() + pos_, 4);
    pos_ += 4;
    return v;  // little-endian hosts only; asserted in read_wav
  }

  std::uint16_t u16() {
    need(2, "u16");
    std::uint16_t v = 0;
    std::memcpy(&v, data_.data() + pos_, 2);
    pos_ += 2;
    return v;
  }

  std::string tag() {
    need(4, "chunk tag");
    std::string t = data_.substr(pos_, 4);
    pos_ += 4;
    return t;
  }

  void skip(std::size_t n, const char* what) {
    need(n, what);
    pos_ += n;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

  void need(std::size_t n, const char* what) const {
    if (data_.size() - pos_ < n) {
      throw std::runtime_error(name_ + ": truncated " + what);
    }
  }

  const char* at() const { return data_.data() + pos_; }

 private:
  const std::string& data_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  static_assert(std::endian::native == std::endian::little,
                "WAV reader assumes a little-endian host");
  const std::string data = read_text_file(path);
  const std::string name = path.string();
  ByteReader reader(data, name);

  if (reader.tag() != "RIFF") throw std::runtime_error(name + ": not a RIFF file");
  reader.u32();  // RIFF size; data beyond it is ignored
  if (reader.tag() != "WAVE") throw std::runtime_error(name + ": not a WAVE file");

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;

  while (reader.remaining() >= 8) {
    const std::string chunk = reader.tag();
    const std::uint32_t size = reader.u32();
    if (chunk == "fmt ") {
      if (size < 16) throw std::runtime_error(name + ": fmt chunk too short");
      reader.need(size, "fmt chunk");
      const std::size_t fmt_end = reader.pos() + size;
      const std::uint16_t audio_format = reader.u16();
      if (audio_format != 1) {
        throw std::runtime_error(name + ": audio_format " +
                                 std::to_string(audio_format) +
                                 " is not PCM (1)");
      }
      channels = reader.u16();
      sample_rate = reader.u32();
      reader.u32();  // byte rate
      reader.u16();  // block align
      bits = reader.u16();
      if (bits != 16) {
        throw std::runtime_error(name + ": bits_per_sample " +
                                 std::to_string(bits) + " unsupported (need 16)");
      }
      if (channels != 1 && channels != 2) {
        throw std::runtime_error(name + ": channels " + std::to_string(channels) +
                                 " unsupported (need mono or stereo)");
      }
      reader.skip(fmt_end - reader.pos(), "fmt extension");
      have_fmt = true;
    } else if (chunk == "data") {
      if (!have_fmt) throw std::runtime_error(name + ": data chunk before fmt");
      reader.need(size, "data chunk");
      const std::size_t frame_bytes = 2u * channels;
      if (size % frame_bytes != 0) {
        throw std::runtime_error(name + ": data size not a whole number of frames");
      }
      const std::size_t n_frames = size / frame_bytes;

      Waveform wave;
      if (sample_rate < 8000) {
        throw std::runtime_error(name + ": sample_rate " +
                                 std::to_string(sample_rate) + " below 8000 Hz");
      }
      wave.sample_rate_hz = static_cast<int>(sample_rate);
      wave.samples.resize(n_frames);
      const char* p = reader.at();
      for (std::size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) {
          std::int16_t s = 0;
          std::memcpy(&s, p + (i * channels + c) * 2, 2);
          acc += static_cast<double>(s);
        }
        wave.samples[i] = acc / (32768.0 * channels);
      }
      return wave;
    } else {
      reader.skip(size + (size % 2), "chunk body");  // chunks are word-aligned
    }
  }
  throw std::runtime_error(name + ": no data chunk found");
}

}  // namespace voiceanon
