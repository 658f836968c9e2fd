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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechfactor/waveio.hpp"

namespace speechfactor {

/// Words per synthesis chunk; unbounded keeps the whole transcript together.
class ChunkSpan {
 public:
  static ChunkSpan unbounded() { return ChunkSpan(std::nullopt); }
  /// Throws InvalidArgument for 0.
  static ChunkSpan words(std::size_t n);
  /// Accepts a positive integer or "unbounded".
  static ChunkSpan parse(std::string_view text);

  bool bounded() const { return words_.has_value(); }
  std::size_t size() const { return words_.value_or(0); }
  std::string to_string() const;

  bool operator==(const ChunkSpan&) const = default;

 private:
  explicit ChunkSpan(std::optional<std::size_t> words) : words_(words) {}
  std::optional<std::size_t> words_;
};

struct ChunkPlan {
  std::string utterance_id;
  ChunkSpan span = ChunkSpan::unbounded();
  std::vector<std::vector<std::string>> chunks;
};

/// Greedy left-to-right grouping. Throws EmptyTranscript.
ChunkPlan chunk_words(std::string utterance_id, std::span<const std::string> words, ChunkSpan span);

/// Splits on whitespace.
std::vector<std::string> split_words(std::string_view text);

/// Raw concatenation in chunk order with `gap_ms` of zeros between chunks.
/// Throws ChunkCountMismatch or SampleRateMismatch.
AudioBuffer assemble(const ChunkPlan& plan, std::span<const AudioBuffer> chunk_audio, double gap_ms = 0.0);

/// Job list rows: utterance_id<TAB>chunk_index<TAB>chunk text.
std::string chunk_plans_to_tsv(std::span<const ChunkPlan> plans);

/// Reads a job list back, grouping rows by utterance in first-seen order.
/// Chunk indices must run 0, 1, ... per utterance. The span is not stored in
/// the file; it is recovered from the first chunk when there are several.
std::vector<ChunkPlan> chunk_plans_from_tsv(std::string_view text);

/// "<utterance_id>.<chunk_index>.wav"
std::string chunk_wav_name(std::string_view utterance_id, std::size_t chunk_index);

} // namespace speechfactor
