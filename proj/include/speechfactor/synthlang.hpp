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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "speechfactor/rng.hpp"
#include "speechfactor/waveio.hpp"

namespace speechfactor {

using PhoneId = std::uint32_t;
using WordId = std::uint32_t;

enum class NoiseColor { White, Brown, Pink, Blue, Violet };

inline constexpr NoiseColor kNoiseColors[] = {
    NoiseColor::White, NoiseColor::Brown, NoiseColor::Pink, NoiseColor::Blue, NoiseColor::Violet};

std::string_view to_string(NoiseColor color);

/// Exponent of the power spectral density, PSD ~ f^exponent.
double psd_exponent(NoiseColor color);

/// Nominal slope in dB per octave: exponent * 10 log10(2), i.e. about
/// 0, -6, -3, +3, +6 for white, brown, pink, blue, violet.
double nominal_slope_db_per_octave(NoiseColor color);

struct Tone {
  double freq_hz = 0.0;
  bool operator==(const Tone&) const = default;
};

using SoundSource = std::variant<NoiseColor, Tone>;

inline constexpr double kMinToneHz = 200.0;
inline constexpr double kMaxToneHz = 900.0;

struct PhoneSpec {
  PhoneId phone_id = 0;
  SoundSource source;
  bool operator==(const PhoneSpec&) const = default;
};

/// 44 sounds: ids 0-4 are the noise colors (in kNoiseColors order), ids 5-43
/// are tones.
class PhoneInventory {
 public:
  static constexpr std::size_t kSize = 44;
  static constexpr std::size_t kNoiseCount = 5;
  static constexpr std::size_t kToneCount = kSize - kNoiseCount;

  PhoneInventory() = default;
  /// Throws InvalidArgument if the phones break the 5 noise / 39 tone layout.
  explicit PhoneInventory(std::vector<PhoneSpec> phones);

  std::span<const PhoneSpec> phones() const { return phones_; }
  std::size_t size() const { return phones_.size(); }
  /// Throws UnknownPhoneId.
  const PhoneSpec& at(PhoneId id) const;

  bool operator==(const PhoneInventory&) const = default;

 private:
  std::vector<PhoneSpec> phones_;
};

/// Word id is the index into `words`.
struct Lexicon {
  std::vector<std::vector<PhoneId>> words;
  bool operator==(const Lexicon&) const = default;
};

struct IntRange {
  int min = 1;
  int max = 1;
};

struct RenderParams {
  double phone_base_ms = 90.0;
  double phone_jitter_ms = 30.0;
  double word_unit_base_ms = 300.0;
  double word_unit_jitter_ms = 30.0;
  double volume_min = 0.1;
  double volume_max = 0.9;
  int sample_rate_hz = kDefaultSampleRate;

  /// Throws InvalidArgument unless base > jitter >= 0, 0 < volume_min <=
  /// volume_max <= 1 and the rate is positive.
  void validate() const;
};

/// Defaults for corpus generation. Not values taken from any reference
/// corpus; chosen for plausible utterance lengths.
struct LanguageConfig {
  std::size_t vocab_size = 10000;
  IntRange word_length{2, 8};
  IntRange sentence_length{5, 20};
};

/// Tone frequencies are drawn on a 0.1 Hz grid in [200, 900] Hz, redrawing
/// duplicates.
PhoneInventory build_inventory(Seed seed);

/// Sampled parameters of one phone rendering.
struct PhoneDraw {
  std::size_t num_samples = 0;
  double peak = 0.0;
  Seed waveform_seed = 0;
};

/// Duration uniform on the sample grid of [base - jitter, base + jitter] ms,
/// peak uniform on [volume_min, volume_max].
PhoneDraw draw_phone(const RenderParams& params, Seed seed);

/// Renders `num_samples` of a source at the given peak amplitude. Tones are
/// sinusoids with random phase and 5 ms linear onset/offset ramps; noises are
/// spectrally shaped Gaussian noise normalized to the peak.
AudioBuffer render_source(
    const SoundSource& source,
    std::size_t num_samples,
    double peak,
    int sample_rate_hz,
    Rng& rng);

AudioBuffer render_phone(const PhoneSpec& spec, const RenderParams& params, Seed seed);

Lexicon build_lexicon(
    const PhoneInventory& inventory,
    std::size_t vocab_size,
    IntRange word_length,
    Seed seed);

std::vector<WordId> sample_sentence(const Lexicon& lexicon, IntRange sentence_length, Seed seed);

/// Phones of every word, rendered back to back with no gaps. Phone i uses the
/// i-th derive() of a generator seeded with `seed`.
AudioBuffer render_utterance(
    std::span<const WordId> sentence,
    const Lexicon& lexicon,
    const PhoneInventory& inventory,
    const RenderParams& params,
    Seed seed);

/// Sample count render_utterance would produce, without rendering.
std::size_t utterance_length(
    std::span<const WordId> sentence,
    const Lexicon& lexicon,
    const PhoneInventory& inventory,
    const RenderParams& params,
    Seed seed);

struct NoiseUnit {
  PhoneId phone_id = 0;
  std::size_t num_samples = 0;
  double peak = 0.0;
  Seed waveform_seed = 0;
};

/// Word-length units over the whole inventory; the last unit is truncated so
/// the lengths sum to total_samples.
std::vector<NoiseUnit> plan_word_noise(
    const RenderParams& params,
    const PhoneInventory& inventory,
    std::size_t total_samples,
    Seed seed);

AudioBuffer word_noise_sequence(
    const RenderParams& params,
    const PhoneInventory& inventory,
    std::size_t total_samples,
    Seed seed);

/// Standard deviations between zero and the clip level for white noise; the
/// two-sided Gaussian tail beyond 5 sigma is about 5.7e-7.
inline constexpr double kWhiteNoiseClipSigmas = 5.0;

/// i.i.d. Gaussian samples with sigma = volume / kWhiteNoiseClipSigmas.
AudioBuffer white_noise(
    std::size_t total_samples,
    Seed seed,
    double volume,
    int sample_rate_hz = kDefaultSampleRate);

std::string inventory_to_json(const PhoneInventory& inventory);
PhoneInventory inventory_from_json(std::string_view text);
std::string lexicon_to_json(const Lexicon& lexicon);
Lexicon lexicon_from_json(std::string_view text);

} // namespace speechfactor
