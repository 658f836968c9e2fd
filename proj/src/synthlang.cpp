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

#include "speechfactor/synthlang.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "speechfactor/dsp.hpp"
#include "speechfactor/error.hpp"

namespace speechfactor {

namespace {

constexpr int kJsonVersion = 1;
constexpr double kToneRampMs = 5.0;

std::size_t ms_to_samples(double ms, int rate) {
  return static_cast<std::size_t>(std::floor(ms * rate / 1000.0 + 0.5));
}

void check_range(IntRange range, const char* what) {
  if (range.min < 1 || range.min > range.max) {
    throw Error(
        Errc::InvalidArgument,
        std::string(what) + " range must satisfy 1 <= min <= max");
  }
}

NoiseColor color_from_string(const std::string& name) {
  for (NoiseColor c : kNoiseColors) {
    if (to_string(c) == name) {
      return c;
    }
  }
  throw Error(Errc::InvalidArgument, "unknown noise color \"" + name + "\"");
}

nlohmann::json parse_json(std::string_view text, const char* kind) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidArgument, std::string(kind) + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("version", 0) != kJsonVersion ||
      doc.value("kind", std::string()) != kind) {
    throw Error(Errc::InvalidArgument, std::string("not a version 1 ") + kind + " document");
  }
  return doc;
}

} // namespace

std::string_view to_string(NoiseColor color) {
  switch (color) {
    case NoiseColor::White:
      return "white";
    case NoiseColor::Brown:
      return "brown";
    case NoiseColor::Pink:
      return "pink";
    case NoiseColor::Blue:
      return "blue";
    case NoiseColor::Violet:
      return "violet";
  }
  return "unknown";
}

double psd_exponent(NoiseColor color) {
  switch (color) {
    case NoiseColor::White:
      return 0.0;
    case NoiseColor::Brown:
      return -2.0;
    case NoiseColor::Pink:
      return -1.0;
    case NoiseColor::Blue:
      return 1.0;
    case NoiseColor::Violet:
      return 2.0;
  }
  return 0.0;
}

double nominal_slope_db_per_octave(NoiseColor color) {
  return psd_exponent(color) * 10.0 * std::log10(2.0);
}

PhoneInventory::PhoneInventory(std::vector<PhoneSpec> phones) : phones_(std::move(phones)) {
  if (phones_.size() != kSize) {
    throw Error(Errc::InvalidArgument, "inventory must have exactly 44 phones");
  }
  std::set<NoiseColor> colors;
  for (std::size_t i = 0; i < phones_.size(); ++i) {
    const PhoneSpec& p = phones_[i];
    if (p.phone_id != i) {
      throw Error(Errc::InvalidArgument, "phone ids must be 0..43 in order");
    }
    const bool is_noise = std::holds_alternative<NoiseColor>(p.source);
    if (is_noise != (i < kNoiseCount)) {
      throw Error(Errc::InvalidArgument, "ids 0-4 must be noises and 5-43 tones");
    }
    if (is_noise) {
      colors.insert(std::get<NoiseColor>(p.source));
    } else {
      const double f = std::get<Tone>(p.source).freq_hz;
      if (!(f >= kMinToneHz && f <= kMaxToneHz)) {
        throw Error(Errc::InvalidArgument, "tone frequency outside [200, 900] Hz");
      }
    }
  }
  if (colors.size() != kNoiseCount) {
    throw Error(Errc::InvalidArgument, "each noise color must appear exactly once");
  }
}

const PhoneSpec& PhoneInventory::at(PhoneId id) const {
  if (id >= phones_.size()) {
    throw Error(Errc::UnknownPhoneId, "phone id " + std::to_string(id));
  }
  return phones_[id];
}

void RenderParams::validate() const {
  const bool ok = phone_base_ms > phone_jitter_ms && phone_jitter_ms >= 0.0 &&
      word_unit_base_ms > word_unit_jitter_ms && word_unit_jitter_ms >= 0.0 &&
      volume_min > 0.0 && volume_min <= volume_max && volume_max <= 1.0 && sample_rate_hz > 0;
  if (!ok) {
    throw Error(Errc::InvalidArgument, "invalid render parameters");
  }
}

PhoneInventory build_inventory(Seed seed) {
  Rng rng(seed);
  std::vector<PhoneSpec> phones;
  PhoneId id = 0;
  for (NoiseColor c : kNoiseColors) {
    phones.push_back({id++, c});
  }
  std::set<std::int64_t> used;
  const auto lo = static_cast<std::int64_t>(kMinToneHz * 10);
  const auto hi = static_cast<std::int64_t>(kMaxToneHz * 10);
  while (phones.size() < PhoneInventory::kSize) {
    const std::int64_t tenths = rng.uniform_int(lo, hi);
    if (!used.insert(tenths).second) {
      continue;
    }
    phones.push_back({id++, Tone{static_cast<double>(tenths) / 10.0}});
  }
  return PhoneInventory(std::move(phones));
}

PhoneDraw draw_phone(const RenderParams& params, Seed seed) {
  Rng rng(seed);
  const std::size_t lo = ms_to_samples(params.phone_base_ms - params.phone_jitter_ms, params.sample_rate_hz);
  const std::size_t hi = ms_to_samples(params.phone_base_ms + params.phone_jitter_ms, params.sample_rate_hz);
  PhoneDraw draw;
  draw.num_samples = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  draw.peak = rng.uniform(params.volume_min, params.volume_max);
  draw.waveform_seed = rng.derive();
  return draw;
}

AudioBuffer render_source(
    const SoundSource& source,
    std::size_t num_samples,
    double peak,
    int sample_rate_hz,
    Rng& rng) {
  std::vector<double> wave;
  if (const auto* tone = std::get_if<Tone>(&source)) {
    wave.resize(num_samples);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double step = 2.0 * std::numbers::pi * tone->freq_hz / sample_rate_hz;
    for (std::size_t i = 0; i < num_samples; ++i) {
      wave[i] = peak * std::sin(phase + step * static_cast<double>(i));
    }
    const std::size_t ramp =
        std::min(ms_to_samples(kToneRampMs, sample_rate_hz), num_samples / 2);
    for (std::size_t i = 0; i < ramp; ++i) {
      const double gain = static_cast<double>(i) / static_cast<double>(ramp);
      wave[i] *= gain;
      wave[num_samples - 1 - i] *= gain;
    }
  } else {
    wave = dsp::colored_noise(num_samples, psd_exponent(std::get<NoiseColor>(source)), rng);
    dsp::normalize_peak(wave, peak);
  }
  return AudioBuffer::from_normalized(wave, sample_rate_hz);
}

AudioBuffer render_phone(const PhoneSpec& spec, const RenderParams& params, Seed seed) {
  const PhoneDraw draw = draw_phone(params, seed);
  Rng rng(draw.waveform_seed);
  return render_source(spec.source, draw.num_samples, draw.peak, params.sample_rate_hz, rng);
}

Lexicon build_lexicon(
    const PhoneInventory& inventory,
    std::size_t vocab_size,
    IntRange word_length,
    Seed seed) {
  if (vocab_size < 1) {
    throw Error(Errc::InvalidArgument, "vocab_size must be >= 1");
  }
  check_range(word_length, "word length");
  if (inventory.size() == 0) {
    throw Error(Errc::InvalidArgument, "empty inventory");
  }
  Rng rng(seed);
  Lexicon lexicon;
  lexicon.words.reserve(vocab_size);
  for (std::size_t w = 0; w < vocab_size; ++w) {
    const auto len = static_cast<std::size_t>(rng.uniform_int(word_length.min, word_length.max));
    std::vector<PhoneId> phones(len);
    for (auto& p : phones) {
      p = static_cast<PhoneId>(rng.uniform_below(inventory.size()));
    }
    lexicon.words.push_back(std::move(phones));
  }
  return lexicon;
}

std::vector<WordId> sample_sentence(const Lexicon& lexicon, IntRange sentence_length, Seed seed) {
  if (lexicon.words.empty()) {
    throw Error(Errc::InvalidArgument, "empty lexicon");
  }
  check_range(sentence_length, "sentence length");
  Rng rng(seed);
  const auto len = static_cast<std::size_t>(rng.uniform_int(sentence_length.min, sentence_length.max));
  std::vector<WordId> sentence(len);
  for (auto& w : sentence) {
    w = static_cast<WordId>(rng.uniform_below(lexicon.words.size()));
  }
  return sentence;
}

namespace {

template <typename Visit>
void for_each_phone(
    std::span<const WordId> sentence,
    const Lexicon& lexicon,
    const PhoneInventory& inventory,
    Seed seed,
    Visit&& visit) {
  Rng rng(seed);
  for (WordId w : sentence) {
    if (w >= lexicon.words.size()) {
      throw Error(Errc::UnknownWordId, "word id " + std::to_string(w));
    }
    for (PhoneId p : lexicon.words[w]) {
      visit(inventory.at(p), rng.derive());
    }
  }
}

} // namespace

AudioBuffer render_utterance(
    std::span<const WordId> sentence,
    const Lexicon& lexicon,
    const PhoneInventory& inventory,
    const RenderParams& params,
    Seed seed) {
  params.validate();
  std::vector<AudioBuffer> pieces;
  for_each_phone(sentence, lexicon, inventory, seed, [&](const PhoneSpec& spec, Seed phone_seed) {
    pieces.push_back(render_phone(spec, params, phone_seed));
  });
  if (pieces.empty()) {
    return AudioBuffer({}, params.sample_rate_hz);
  }
  return concat(pieces);
}

std::size_t utterance_length(
    std::span<const WordId> sentence,
    const Lexicon& lexicon,
    const PhoneInventory& inventory,
    const RenderParams& params,
    Seed seed) {
  std::size_t total = 0;
  for_each_phone(sentence, lexicon, inventory, seed, [&](const PhoneSpec&, Seed phone_seed) {
    total += draw_phone(params, phone_seed).num_samples;
  });
  return total;
}

std::vector<NoiseUnit> plan_word_noise(
    const RenderParams& params,
    const PhoneInventory& inventory,
    std::size_t total_samples,
    Seed seed) {
  params.validate();
  if (total_samples == 0) {
    throw Error(Errc::InvalidArgument, "total_samples must be > 0");
  }
  const int rate = params.sample_rate_hz;
  const auto lo = static_cast<std::int64_t>(ms_to_samples(params.word_unit_base_ms - params.word_unit_jitter_ms, rate));
  const auto hi = static_cast<std::int64_t>(ms_to_samples(params.word_unit_base_ms + params.word_unit_jitter_ms, rate));
  Rng rng(seed);
  std::vector<NoiseUnit> units;
  std::size_t remaining = total_samples;
  while (remaining > 0) {
    NoiseUnit unit;
    unit.phone_id = static_cast<PhoneId>(rng.uniform_below(inventory.size()));
    unit.num_samples = std::min(remaining, static_cast<std::size_t>(rng.uniform_int(lo, hi)));
    unit.peak = rng.uniform(params.volume_min, params.volume_max);
    unit.waveform_seed = rng.derive();
    remaining -= unit.num_samples;
    units.push_back(unit);
  }
  return units;
}

AudioBuffer word_noise_sequence(
    const RenderParams& params,
    const PhoneInventory& inventory,
    std::size_t total_samples,
    Seed seed) {
  const std::vector<NoiseUnit> units = plan_word_noise(params, inventory, total_samples, seed);
  std::vector<AudioBuffer> pieces;
  pieces.reserve(units.size());
  for (const auto& unit : units) {
    Rng rng(unit.waveform_seed);
    pieces.push_back(render_source(
        inventory.at(unit.phone_id).source, unit.num_samples, unit.peak, params.sample_rate_hz, rng));
  }
  return concat(pieces);
}

AudioBuffer white_noise(std::size_t total_samples, Seed seed, double volume, int sample_rate_hz) {
  if (!(volume > 0.0 && volume <= 1.0)) {
    throw Error(Errc::InvalidArgument, "volume must be in (0, 1]");
  }
  Rng rng(seed);
  const double sigma = volume / kWhiteNoiseClipSigmas;
  std::vector<double> wave(total_samples);
  for (auto& x : wave) {
    x = sigma * rng.gaussian();
  }
  return AudioBuffer::from_normalized(wave, sample_rate_hz);
}

std::string inventory_to_json(const PhoneInventory& inventory) {
  nlohmann::json phones = nlohmann::json::array();
  for (const auto& p : inventory.phones()) {
    nlohmann::json entry{{"id", p.phone_id}};
    if (const auto* tone = std::get_if<Tone>(&p.source)) {
      entry["type"] = "tone";
      entry["freq_hz"] = tone->freq_hz;
    } else {
      entry["type"] = "noise";
      entry["color"] = std::string(to_string(std::get<NoiseColor>(p.source)));
    }
    phones.push_back(std::move(entry));
  }
  const nlohmann::json doc{{"version", kJsonVersion}, {"kind", "phone_inventory"}, {"phones", phones}};
  return doc.dump(2) + "\n";
}

PhoneInventory inventory_from_json(std::string_view text) {
  const nlohmann::json doc = parse_json(text, "phone_inventory");
  std::vector<PhoneSpec> phones;
  try {
    for (const auto& entry : doc.at("phones")) {
      PhoneSpec spec;
      spec.phone_id = entry.at("id").get<PhoneId>();
      const auto type = entry.at("type").get<std::string>();
      if (type == "tone") {
        spec.source = Tone{entry.at("freq_hz").get<double>()};
      } else if (type == "noise") {
        spec.source = color_from_string(entry.at("color").get<std::string>());
      } else {
        throw Error(Errc::InvalidArgument, "unknown phone type \"" + type + "\"");
      }
      phones.push_back(spec);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("phone_inventory: ") + e.what());
  }
  return PhoneInventory(std::move(phones));
}

std::string lexicon_to_json(const Lexicon& lexicon) {
  const nlohmann::json doc{{"version", kJsonVersion}, {"kind", "lexicon"}, {"words", lexicon.words}};
  return doc.dump() + "\n";
}

Lexicon lexicon_from_json(std::string_view text) {
  const nlohmann::json doc = parse_json(text, "lexicon");
  Lexicon lexicon;
  try {
    lexicon.words = doc.at("words").get<std::vector<std::vector<PhoneId>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("lexicon: ") + e.what());
  }
  for (const auto& w : lexicon.words) {
    if (w.empty()) {
      throw Error(Errc::InvalidArgument, "lexicon contains an empty word");
    }
  }
  return lexicon;
}

} // namespace speechfactor
