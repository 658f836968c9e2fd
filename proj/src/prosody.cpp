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

#include "speechfactor/prosody.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "speechfactor/error.hpp"

namespace speechfactor {

ChunkSpan ChunkSpan::words(std::size_t n) {
  if (n == 0) {
    throw Error(Errc::InvalidArgument, "chunk span must be positive");
  }
  return ChunkSpan(n);
}

ChunkSpan ChunkSpan::parse(std::string_view text) {
  if (text == "unbounded" || text == "inf" || text == "full") {
    return unbounded();
  }
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::InvalidArgument, "invalid chunk span \"" + std::string(text) + "\"");
  }
  return words(n);
}

std::string ChunkSpan::to_string() const {
  return bounded() ? std::to_string(*words_) : "unbounded";
}

ChunkPlan chunk_words(std::string utterance_id, std::span<const std::string> words, ChunkSpan span) {
  if (words.empty()) {
    throw Error(Errc::EmptyTranscript, utterance_id + ": no words to chunk");
  }
  ChunkPlan plan{std::move(utterance_id), span, {}};
  const std::size_t step = span.bounded() ? span.size() : words.size();
  for (std::size_t i = 0; i < words.size(); i += step) {
    const std::size_t end = std::min(words.size(), i + step);
    plan.chunks.emplace_back(words.begin() + static_cast<std::ptrdiff_t>(i),
                             words.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return plan;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) {
    out.push_back(w);
  }
  return out;
}

AudioBuffer assemble(const ChunkPlan& plan, std::span<const AudioBuffer> chunk_audio, double gap_ms) {
  if (chunk_audio.size() != plan.chunks.size()) {
    throw Error(
        Errc::ChunkCountMismatch,
        plan.utterance_id + ": " + std::to_string(chunk_audio.size()) + " audio chunks for " +
            std::to_string(plan.chunks.size()) + " planned chunks");
  }
  if (gap_ms < 0.0) {
    throw Error(Errc::InvalidArgument, "gap must be non-negative");
  }
  if (chunk_audio.empty()) {
    return AudioBuffer();
  }
  const int rate = chunk_audio.front().sample_rate_hz();
  const auto gap_samples = static_cast<std::size_t>(std::floor(gap_ms * rate / 1000.0 + 0.5));
  const AudioBuffer gap(std::vector<std::int16_t>(gap_samples, 0), rate);
  std::vector<AudioBuffer> pieces;
  for (std::size_t i = 0; i < chunk_audio.size(); ++i) {
    if (i > 0 && gap_samples > 0) {
      pieces.push_back(gap);
    }
    pieces.push_back(chunk_audio[i]);
  }
  return concat(pieces);
}

std::string chunk_plans_to_tsv(std::span<const ChunkPlan> plans) {
  std::ostringstream out;
  for (const auto& plan : plans) {
    for (std::size_t i = 0; i < plan.chunks.size(); ++i) {
      out << plan.utterance_id << '\t' << i << '\t';
      for (std::size_t w = 0; w < plan.chunks[i].size(); ++w) {
        out << (w ? " " : "") << plan.chunks[i][w];
      }
      out << '\n';
    }
  }
  return out.str();
}

std::vector<ChunkPlan> chunk_plans_from_tsv(std::string_view text) {
  std::vector<ChunkPlan> plans;
  std::map<std::string, std::size_t> index;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(Errc::InvalidArgument, "chunk plan line " + std::to_string(number) + ": expected 3 fields");
    }
    const std::string utt = line.substr(0, t1);
    const std::string idx_text = line.substr(t1 + 1, t2 - t1 - 1);
    std::size_t chunk_index = 0;
    const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), chunk_index);
    if (idx_text.empty() || ec != std::errc() || ptr != idx_text.data() + idx_text.size()) {
      throw Error(Errc::InvalidArgument, "chunk plan line " + std::to_string(number) + ": bad chunk index");
    }
    auto [it, inserted] = index.try_emplace(utt, plans.size());
    if (inserted) {
      plans.push_back({utt, ChunkSpan::unbounded(), {}});
    }
    ChunkPlan& plan = plans[it->second];
    if (chunk_index != plan.chunks.size()) {
      throw Error(Errc::InvalidArgument, "chunk plan line " + std::to_string(number) + ": chunk index out of sequence");
    }
    plan.chunks.push_back(split_words(std::string_view(line).substr(t2 + 1)));
  }
  for (auto& plan : plans) {
    if (plan.chunks.size() > 1) {
      plan.span = ChunkSpan::words(plan.chunks.front().size());
    }
  }
  return plans;
}

std::string chunk_wav_name(std::string_view utterance_id, std::size_t chunk_index) {
  return std::string(utterance_id) + "." + std::to_string(chunk_index) + ".wav";
}

} // namespace speechfactor
