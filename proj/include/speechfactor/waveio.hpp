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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace speechfactor {

inline constexpr int kDefaultSampleRate = 16000;

/// Maps a normalized amplitude to 16-bit PCM: clamp to [-1, 1], scale by
/// 32768, round half away from zero, clamp to [-32768, 32767].
std::int16_t encode_sample(double value);

/// Inverse of encode_sample for every representable value: s / 32768.
inline double decode_sample(std::int16_t sample) {
  return static_cast<double>(sample) / 32768.0;
}

/// Mono 16-bit PCM audio. Immutable once constructed.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  explicit AudioBuffer(
      std::vector<std::int16_t> samples,
      int sample_rate_hz = kDefaultSampleRate);

  static AudioBuffer from_normalized(
      std::span<const double> values,
      int sample_rate_hz = kDefaultSampleRate);

  std::span<const std::int16_t> samples() const { return samples_; }
  int sample_rate_hz() const { return sample_rate_hz_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_s() const {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

  std::vector<double> normalized() const;

  /// Copy of samples [begin, end).
  AudioBuffer slice(std::size_t begin, std::size_t end) const;

  bool operator==(const AudioBuffer&) const = default;

 private:
  std::vector<std::int16_t> samples_;
  int sample_rate_hz_ = kDefaultSampleRate;
};

struct WavInfo {
  std::uint64_t num_samples = 0;
  int sample_rate_hz = 0;
};

AudioBuffer decode_wav(std::span<const std::byte> bytes);
std::vector<std::byte> encode_wav(const AudioBuffer& buffer);

AudioBuffer read_wav(const std::filesystem::path& path);
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);

/// Validates the file like read_wav and reports its length without decoding
/// the samples.
WavInfo read_wav_info(const std::filesystem::path& path);

/// Exact sample concatenation. No crossfade, gain change or click removal.
AudioBuffer concat(std::span<const AudioBuffer> buffers);

} // namespace speechfactor
