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

#include "speechfactor/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "speechfactor/error.hpp"
#include "speechfactor/waveio.hpp"

namespace speechfactor {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoFailure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void check_entries(const CorpusManifest& manifest) {
  std::set<std::string_view> seen;
  for (const auto& e : manifest.entries) {
    if (e.relative_path.empty() || e.num_samples == 0) {
      throw Error(Errc::InvalidArgument, "manifest entry needs a path and a positive sample count");
    }
    if (!seen.insert(e.relative_path).second) {
      throw Error(Errc::InvalidArgument, "duplicate manifest path " + e.relative_path);
    }
  }
}

} // namespace

std::string format_manifest(const CorpusManifest& manifest) {
  check_entries(manifest);
  std::ostringstream out;
  out << manifest.root << '\n';
  for (const auto& e : manifest.entries) {
    out << e.relative_path << '\t' << e.num_samples << '\n';
  }
  return out.str();
}

CorpusManifest parse_manifest(std::string_view text) {
  CorpusManifest manifest;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::InvalidArgument, "manifest is empty");
  }
  manifest.root = line;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) {
      continue;
    }
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw Error(Errc::InvalidArgument, "manifest line " + std::to_string(number) + ": expected path<TAB>samples");
    }
    ManifestEntry entry;
    entry.relative_path = line.substr(0, tab);
    const std::string_view count = std::string_view(line).substr(tab + 1);
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), entry.num_samples);
    if (count.empty() || ec != std::errc() || ptr != count.data() + count.size()) {
      throw Error(Errc::InvalidArgument, "manifest line " + std::to_string(number) + ": bad sample count");
    }
    manifest.entries.push_back(std::move(entry));
  }
  check_entries(manifest);
  return manifest;
}

void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path) {
  const std::string text = format_manifest(manifest);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    throw Error(Errc::IoFailure, "cannot write " + path.string());
  }
}

CorpusManifest read_manifest(const std::filesystem::path& path, bool verify) {
  CorpusManifest manifest = parse_manifest(read_text(path));
  if (verify) {
    verify_manifest(manifest);
  }
  return manifest;
}

void verify_manifest(const CorpusManifest& manifest) {
  const std::filesystem::path root(manifest.root);
  for (const auto& e : manifest.entries) {
    const WavInfo info = read_wav_info(root / e.relative_path);
    if (info.num_samples != e.num_samples) {
      throw Error(
          Errc::SampleCountMismatch,
          e.relative_path + ": manifest says " + std::to_string(e.num_samples) + ", file has " +
              std::to_string(info.num_samples));
    }
  }
}

CorpusManifest scan_manifest(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(Errc::IoFailure, "not a directory: " + root.string());
  }
  CorpusManifest manifest;
  manifest.root = fs::absolute(root).lexically_normal().string();
  for (const auto& item : fs::recursive_directory_iterator(root)) {
    if (!item.is_regular_file() || item.path().extension() != ".wav") {
      continue;
    }
    const WavInfo info = read_wav_info(item.path());
    if (info.num_samples == 0) {
      continue;
    }
    manifest.entries.push_back(
        {fs::relative(item.path(), root).generic_string(), info.num_samples});
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const auto& a, const auto& b) { return a.relative_path < b.relative_path; });
  return manifest;
}

SpeakerAssignment speaker_split(
    std::span<const std::string> utterance_ids,
    std::size_t n_speakers,
    Seed seed,
    std::size_t max_speakers) {
  if (n_speakers < 1 || n_speakers > max_speakers) {
    throw Error(
        Errc::InvalidSpeakerCount,
        std::to_string(n_speakers) + " not in [1, " + std::to_string(max_speakers) + "]");
  }
  std::vector<std::size_t> order(utterance_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  fisher_yates(std::span<std::size_t>(order), rng);
  SpeakerAssignment assignment;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!assignment.emplace(utterance_ids[order[k]], k % n_speakers).second) {
      throw Error(Errc::InvalidArgument, "duplicate utterance id " + utterance_ids[order[k]]);
    }
  }
  return assignment;
}

std::vector<std::size_t> speaker_counts(const SpeakerAssignment& assignment, std::size_t n_speakers) {
  std::vector<std::size_t> counts(n_speakers, 0);
  for (const auto& [id, speaker] : assignment) {
    if (speaker < n_speakers) {
      ++counts[speaker];
    }
  }
  return counts;
}

BudgetSelection duration_budget(
    std::span<const std::pair<std::string, std::uint64_t>> entries,
    double target_hours,
    int sample_rate_hz) {
  if (!(target_hours > 0.0)) {
    throw Error(Errc::InvalidArgument, "target hours must be positive");
  }
  if (sample_rate_hz <= 0) {
    throw Error(Errc::InvalidArgument, "sample rate must be positive");
  }
  const double target_samples = target_hours * 3600.0 * sample_rate_hz;
  BudgetSelection selection;
  for (const auto& [id, samples] : entries) {
    if (static_cast<double>(selection.selected_samples) >= target_samples) {
      break;
    }
    selection.ids.push_back(id);
    selection.selected_samples += samples;
  }
  selection.achieved_hours = static_cast<double>(selection.selected_samples) / sample_rate_hz / 3600.0;
  selection.shortfall = static_cast<double>(selection.selected_samples) < target_samples;
  return selection;
}

LexiconStats lexicon_stats(std::span<const std::string> transcripts) {
  LexiconStats stats;
  std::unordered_set<std::string> types;
  for (const auto& text : transcripts) {
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      ++stats.token_count;
      for (char& c : token) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      types.insert(std::move(token));
    }
  }
  stats.type_count = types.size();
  return stats;
}

std::vector<TranscriptLine> parse_transcripts(std::string_view text) {
  std::vector<TranscriptLine> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(Errc::InvalidArgument, "transcript line " + std::to_string(number) + ": expected id<TAB>text");
    }
    lines.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return lines;
}

std::vector<TranscriptLine> read_transcripts(const std::filesystem::path& path) {
  return parse_transcripts(read_text(path));
}

} // namespace speechfactor
