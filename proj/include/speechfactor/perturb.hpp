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
#include <string>
#include <vector>

#include "speechfactor/alignment.hpp"
#include "speechfactor/rng.hpp"
#include "speechfactor/waveio.hpp"

namespace speechfactor {

enum class Unit { Word, Phone };
enum class SegmentKind { Labeled, Gap };

std::string_view to_string(Unit unit);
std::string_view to_string(SegmentKind kind);

/// Half-open sample range [start_sample, end_sample). For circular plans
/// (random_span output) end_sample may exceed total_samples; the slice then
/// wraps around to the start of the utterance.
struct Segment {
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;
  SegmentKind kind = SegmentKind::Labeled;
  std::string label;

  std::size_t length() const { return end_sample - start_sample; }
  bool operator==(const Segment&) const = default;
};

/// Segments tile the utterance in ascending order; `order[p]` is the index of
/// the segment played at output position p.
struct SegmentPlan {
  std::string utterance_id;
  std::size_t total_samples = 0;
  std::vector<Segment> segments;
  std::vector<std::size_t> order;

  bool operator==(const SegmentPlan&) const = default;
};

/// round(t * rate), ties rounded up.
std::size_t seconds_to_sample(double seconds, int sample_rate_hz);

/// Throws InvalidPlan unless the segments tile the (circular) sample range
/// contiguously and `order` is a permutation that fixes every Gap segment.
void check_plan(const SegmentPlan& plan);

/// One Labeled segment per non-gap interval of the chosen tier; all other
/// samples become Gap segments. `total_samples` defaults to the rounded
/// alignment duration; pass the audio length to match a real file.
SegmentPlan partition(
    const UtteranceAlignment& alignment,
    Unit unit,
    int sample_rate_hz,
    std::optional<std::size_t> total_samples = std::nullopt);

/// Fisher-Yates over the Labeled positions of `order`; Gap positions stay put.
SegmentPlan shuffle(const SegmentPlan& plan, Rng& rng);
SegmentPlan shuffle(const SegmentPlan& plan, Seed seed);

/// Random-start baseline. Draws offset = uniform_below(total_samples), moves
/// every segment boundary b to (b + offset) mod total_samples, and replaces
/// the segments with the rotated ones (empty labels, all Labeled). The
/// segment crossing the end of the utterance is kept as one wrapped segment.
/// The order is then shuffled from the same generator.
SegmentPlan random_span(const SegmentPlan& plan, Seed seed);

/// Concatenates segment slices in plan order. No fades, windows or gain.
/// Throws LengthMismatch when the audio length differs from the plan.
AudioBuffer render(const SegmentPlan& plan, const AudioBuffer& audio);

/// Audit TSV, one row per segment:
/// utterance_id, index, kind, label, start_sample, end_sample, order_position
/// where order_position is the output slot the segment is played in.
std::string plan_to_tsv(const SegmentPlan& plan);

} // namespace speechfactor
