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

#include "speechfactor/error.hpp"

#include <utility>

namespace speechfactor {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotPcm16Mono:
      return "NotPcm16Mono";
    case Errc::MalformedHeader:
      return "MalformedHeader";
    case Errc::IoFailure:
      return "IoFailure";
    case Errc::SampleRateMismatch:
      return "SampleRateMismatch";
    case Errc::MissingTier:
      return "MissingTier";
    case Errc::SyntaxError:
      return "SyntaxError";
    case Errc::OverlappingIntervals:
      return "OverlappingIntervals";
    case Errc::CountMismatch:
      return "CountMismatch";
    case Errc::EmptyTier:
      return "EmptyTier";
    case Errc::LengthMismatch:
      return "LengthMismatch";
    case Errc::InvalidPlan:
      return "InvalidPlan";
    case Errc::UnknownWordId:
      return "UnknownWordId";
    case Errc::UnknownPhoneId:
      return "UnknownPhoneId";
    case Errc::EmptyTranscript:
      return "EmptyTranscript";
    case Errc::ChunkCountMismatch:
      return "ChunkCountMismatch";
    case Errc::InvalidSpeakerCount:
      return "InvalidSpeakerCount";
    case Errc::SampleCountMismatch:
      return "SampleCountMismatch";
    case Errc::InvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(
    Errc code,
    const std::string& message,
    std::size_t line,
    std::string tier,
    std::size_t index)
    : Error(
          code,
          line > 0 ? "line " + std::to_string(line) + ": " + message
                   : message),
      line_(line),
      tier_(std::move(tier)),
      index_(index) {}

} // namespace speechfactor
