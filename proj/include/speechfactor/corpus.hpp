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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "speechfactor/rng.hpp"

namespace speechfactor {

struct ManifestEntry {
  std::string relative_path;
  std::uint64_t num_samples = 0;
  bool operator==(const ManifestEntry&) const = default;
};

/// Pre-training manifest: root directory line followed by
/// relative_path<TAB>num_samples rows.
struct CorpusManifest {
  std::string root;
  std::vector<ManifestEntry> entries;
  bool operator==(const CorpusManifest&) const = default;
};

/// Throws InvalidArgument on duplicate paths or zero sample counts.
std::string format_manifest(const CorpusManifest& manifest);
CorpusManifest parse_manifest(std::string_view text);

void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);
/// With `verify`, every entry is checked against the WAV file it names and
/// SampleCountMismatch is thrown on the first disagreement.
CorpusManifest read_manifest(const std::filesystem::path& path, bool verify = false);
void verify_manifest(const CorpusManifest& manifest);

/// Scans `root` recursively for .wav files, sorted by relative path.
CorpusManifest scan_manifest(const std::filesystem::path& root);

/// Speakers available in the multi-speaker synthesizer setting.
inline constexpr std::size_t kMaxSpeakers = 109;

using SpeakerAssignment = std::map<std::string, std::size_t>;

/// Shuffles the ids with the seed, then deals them round-robin, so every
/// speaker gets floor(n/k) or ceil(n/k) utterances. Throws
/// InvalidSpeakerCount unless 1 <= n_speakers <= max_speakers, and
/// InvalidArgument on duplicate ids.
SpeakerAssignment speaker_split(
    std::span<const std::string> utterance_ids,
    std::size_t n_speakers,
    Seed seed,
    std::size_t max_speakers = kMaxSpeakers);

std::vector<std::size_t> speaker_counts(const SpeakerAssignment& assignment, std::size_t n_speakers);

struct BudgetSelection {
  std::vector<std::string> ids;
  std::uint64_t selected_samples = 0;
  double achieved_hours = 0.0;
  bool shortfall = false;
};

/// Takes entries in order until the cumulative duration reaches the target.
BudgetSelection duration_budget(
    std::span<const std::pair<std::string, std::uint64_t>> entries,
    double target_hours,
    int sample_rate_hz);

struct LexiconStats {
  std::size_t token_count = 0;
  std::size_t type_count = 0;
  bool operator==(const LexiconStats&) const = default;
};

/// Whitespace tokens; types are distinct ASCII-lowercased tokens.
LexiconStats lexicon_stats(std::span<const std::string> transcripts);

struct TranscriptLine {
  std::string utterance_id;
  std::string text;
};

/// utterance_id<TAB>text per line; blank lines skipped.
std::vector<TranscriptLine> parse_transcripts(std::string_view text);
std::vector<TranscriptLine> read_transcripts(const std::filesystem::path& path);

} // namespace speechfactor
