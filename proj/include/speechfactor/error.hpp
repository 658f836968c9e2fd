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
#include <stdexcept>
#include <string>
#include <string_view>

namespace speechfactor {

enum class Errc {
  NotPcm16Mono,
  MalformedHeader,
  IoFailure,
  SampleRateMismatch,
  MissingTier,
  SyntaxError,
  OverlappingIntervals,
  CountMismatch,
  EmptyTier,
  LengthMismatch,
  InvalidPlan,
  UnknownWordId,
  UnknownPhoneId,
  EmptyTranscript,
  ChunkCountMismatch,
  InvalidSpeakerCount,
  SampleCountMismatch,
  InvalidArgument,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Alignment parse failures carry their location. `line` is 1-based and 0 when
// not applicable; `tier`/`index` are set for MissingTier and
// OverlappingIntervals.
class ParseError : public Error {
 public:
  ParseError(
      Errc code,
      const std::string& message,
      std::size_t line,
      std::string tier = {},
      std::size_t index = 0);

  std::size_t line() const noexcept { return line_; }
  const std::string& tier() const noexcept { return tier_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t line_;
  std::string tier_;
  std::size_t index_;
};

} // namespace speechfactor
