// Copyright 2026 The speechfactor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speechfactor/waveio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "speechfactor/error.hpp"

namespace speechfactor {

namespace {

constexpr std::size_t kRiffHeaderBytes = 12;
constexpr std::size_t kChunkHeaderBytes = 8;
constexpr std::uint16_t kFormatPcm = 1;

std::uint32_t read_u32(std::span<const std::byte> bytes, std::size_t at) {
  return static_cast<std::uint32_t>(bytes[at]) |
      (static_cast<std::uint32_t>(bytes[at + 1]) << 8) |
      (static_cast<std::uint32_t>(bytes[at + 2]) << 16) |
      (static_cast<std::uint32_t>(bytes[at + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::byte> bytes, std::size_t at) {
  return static_cast<std::uint16_t>(
      static_cast<std::uint16_t>(bytes[at]) |
      (static_cast<std::uint16_t>(bytes[at + 1]) << 8));
}

bool has_tag(std::span<const std::byte> bytes, std::size_t at, const char* tag) {
  return std::memcmp(bytes.data() + at, tag, 4) == 0;
}

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
  }
}

void put_u16(std::vector<std::byte>& out, std::uint16_t v) {
  out.push_back(static_cast<std::byte>(v & 0xFF));
  out.push_back(static_cast<std::byte>((v >> 8) & 0xFF));
}

void put_tag(std::vector<std::byte>& out, const char* tag) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::byte>(tag[i]));
  }
}

struct DataLocation {
  WavInfo info;
  std::size_t data_offset = 0;
};

// Walks the RIFF chunk list. Sample data is located but not copied.
DataLocation locate_data(std::span<const std::byte> bytes) {
  if (bytes.size() < kRiffHeaderBytes || !has_tag(bytes, 0, "RIFF") ||
      !has_tag(bytes, 8, "WAVE")) {
    throw Error(Errc::MalformedHeader, "missing RIFF/WAVE header");
  }
  bool have_fmt = false;
  DataLocation loc;
  std::size_t pos = kRiffHeaderBytes;
  while (pos + kChunkHeaderBytes <= bytes.size()) {
    const std::uint32_t chunk_size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + kChunkHeaderBytes;
    if (has_tag(bytes, pos, "fmt ")) {
      if (chunk_size < 16 || body + 16 > bytes.size()) {
        throw Error(Errc::MalformedHeader, "truncated fmt chunk");
      }
      const std::uint16_t format = read_u16(bytes, body);
      const std::uint16_t channels = read_u16(bytes, body + 2);
      const std::uint32_t rate = read_u32(bytes, body + 4);
      const std::uint16_t bits = read_u16(bytes, body + 14);
      if (format != kFormatPcm || channels != 1 || bits != 16) {
        throw Error(
            Errc::NotPcm16Mono,
            "format=" + std::to_string(format) +
                " channels=" + std::to_string(channels) +
                " bits=" + std::to_string(bits));
      }
      if (rate == 0) {
        throw Error(Errc::MalformedHeader, "zero sample rate");
      }
      loc.info.sample_rate_hz = static_cast<int>(rate);
      have_fmt = true;
    } else if (has_tag(bytes, pos, "data")) {
      if (!have_fmt) {
        throw Error(Errc::MalformedHeader, "data chunk before fmt chunk");
      }
      if (chunk_size % 2 != 0 || body + chunk_size > bytes.size()) {
        throw Error(Errc::MalformedHeader, "data chunk size invalid");
      }
      loc.info.num_samples = chunk_size / 2;
      loc.data_offset = body;
      return loc;
    }
    pos = body + chunk_size + (chunk_size & 1U);
  }
  throw Error(
      Errc::MalformedHeader, have_fmt ? "no data chunk" : "no fmt chunk");
}

std::vector<std::byte> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoFailure, "cannot open " + path.string());
  }
  std::vector<char> raw(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(Errc::IoFailure, "read failed: " + path.string());
  }
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  return bytes;
}

} // namespace

std::int16_t encode_sample(double value) {
  const double clamped = std::clamp(value, -1.0, 1.0);
  const double scaled = std::round(clamped * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

AudioBuffer::AudioBuffer(std::vector<std::int16_t> samples, int sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (sample_rate_hz_ <= 0) {
    throw Error(Errc::InvalidArgument, "sample rate must be positive");
  }
}

AudioBuffer AudioBuffer::from_normalized(
    std::span<const double> values,
    int sample_rate_hz) {
  std::vector<std::int16_t> samples(values.size());
  std::transform(values.begin(), values.end(), samples.begin(), encode_sample);
  return AudioBuffer(std::move(samples), sample_rate_hz);
}

std::vector<double> AudioBuffer::normalized() const {
  std::vector<double> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), decode_sample);
  return out;
}

AudioBuffer AudioBuffer::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > samples_.size()) {
    throw Error(Errc::InvalidArgument, "slice out of range");
  }
  return AudioBuffer(
      std::vector<std::int16_t>(
          samples_.begin() + static_cast<std::ptrdiff_t>(begin),
          samples_.begin() + static_cast<std::ptrdiff_t>(end)),
      sample_rate_hz_);
}

AudioBuffer decode_wav(std::span<const std::byte> bytes) {
  const DataLocation loc = locate_data(bytes);
  std::vector<std::int16_t> samples(loc.info.num_samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] =
        static_cast<std::int16_t>(read_u16(bytes, loc.data_offset + 2 * i));
  }
  return AudioBuffer(std::move(samples), loc.info.sample_rate_hz);
}

std::vector<std::byte> encode_wav(const AudioBuffer& buffer) {
  const auto data_bytes = static_cast<std::uint32_t>(buffer.size() * 2);
  const auto rate = static_cast<std::uint32_t>(buffer.sample_rate_hz());
  std::vector<std::byte> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (std::int16_t s : buffer.samples()) {
    put_u16(out, static_cast<std::uint16_t>(s));
  }
  return out;
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  return decode_wav(slurp(path));
}

WavInfo read_wav_info(const std::filesystem::path& path) {
  return locate_data(slurp(path)).info;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  const std::vector<std::byte> bytes = encode_wav(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::IoFailure, "cannot open " + path.string());
  }
  out.write(
      reinterpret_cast<const char*>(bytes.data()),
      static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(Errc::IoFailure, "write failed: " + path.string());
  }
}

AudioBuffer concat(std::span<const AudioBuffer> buffers) {
  if (buffers.empty()) {
    return AudioBuffer();
  }
  const int rate = buffers.front().sample_rate_hz();
  std::size_t total = 0;
  for (const auto& b : buffers) {
    if (b.sample_rate_hz() != rate) {
      throw Error(
          Errc::SampleRateMismatch,
          std::to_string(b.sample_rate_hz()) + " vs " + std::to_string(rate));
    }
    total += b.size();
  }
  std::vector<std::int16_t> out;
  out.reserve(total);
  for (const auto& b : buffers) {
    out.insert(out.end(), b.samples().begin(), b.samples().end());
  }
  return AudioBuffer(std::move(out), rate);
}

} // namespace speechfactor
