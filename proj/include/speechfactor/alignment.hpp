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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechfactor/waveio.hpp"

namespace speechfactor {

/// Tolerance for float-text round-off in alignment files.
inline constexpr double kBoundaryEpsilon = 1e-6;

/// One labeled interval. An empty label marks silence or a gap.
struct AlignmentInterval {
  std::string label;
  double start_s = 0.0;
  double end_s = 0.0;

  bool is_gap() const { return label.empty(); }
  bool operator==(const AlignmentInterval&) const = default;
};

struct UtteranceAlignment {
  std::string utterance_id;
  double duration_s = 0.0;
  std::vector<AlignmentInterval> phones;
  std::vector<AlignmentInterval> words;
};

/// Trims the label; {"", "sil", "sp", "spn", "<eps>"} (any case) become "".
std::string normalize_label(std::string_view label);

/// Parses Praat long-form TextGrid text. The "words" and "phones" interval
/// tiers are located by case-insensitive name; aligner-style speaker prefixes
/// ("spk1 - words") are accepted. Point tiers are skipped.
///
/// Throws ParseError with MissingTier, SyntaxError or OverlappingIntervals.
UtteranceAlignment parse_textgrid(std::string_view text, std::string utterance_id);

/// Parses the plain alignment TSV:
///   #utterance_id<TAB>duration_s
///   tier<TAB>label<TAB>start_s<TAB>end_s
UtteranceAlignment parse_alignment_tsv(std::string_view text);

/// Loads by extension: .TextGrid (utterance id = file stem) or .tsv.
UtteranceAlignment load_alignment(const std::filesystem::path& path);

struct WordGroup {
  std::string label;
  std::size_t phone_count = 0;
};

/// Each word spans [start of its first phone, end of its last phone], taken
/// over the non-gap phones in order. Throws CountMismatch when the grouping
/// does not consume every non-gap phone exactly once.
std::vector<AlignmentInterval> words_from_phones(
    std::span<const AlignmentInterval> phones,
    std::span<const WordGroup> grouping);

enum class FindingKind {
  OutOfBounds,
  Overlap,
  Unordered,
  Degenerate,
  UncoveredWord,
  WordPhoneMismatch,
};

std::string_view to_string(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::string tier;
  std::size_t index = 0;
  std::string message;
};

using ValidationReport = std::vector<Finding>;

/// Collects every structural problem; an empty report means valid.
ValidationReport validate(const UtteranceAlignment& alignment, double audio_duration_s);
ValidationReport validate(const UtteranceAlignment& alignment, const AudioBuffer& audio);

} // namespace speechfactor
