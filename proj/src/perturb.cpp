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

#include "speechfactor/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "speechfactor/error.hpp"

namespace speechfactor {

std::string_view to_string(Unit unit) {
  return unit == Unit::Word ? "word" : "phone";
}

std::string_view to_string(SegmentKind kind) {
  return kind == SegmentKind::Labeled ? "labeled" : "gap";
}

std::size_t seconds_to_sample(double seconds, int sample_rate_hz) {
  const double scaled = std::floor(seconds * sample_rate_hz + 0.5);
  return scaled <= 0.0 ? 0 : static_cast<std::size_t>(scaled);
}

void check_plan(const SegmentPlan& plan) {
  const auto fail = [&](const std::string& why) {
    throw Error(Errc::InvalidPlan, plan.utterance_id + ": " + why);
  };
  const auto& segs = plan.segments;
  if (segs.empty()) {
    fail("no segments");
  }
  if (segs.front().start_sample >= plan.total_samples) {
    fail("first segment starts outside the utterance");
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].start_sample >= segs[i].end_sample) {
      fail("empty segment " + std::to_string(i));
    }
    if (i > 0 && segs[i].start_sample != segs[i - 1].end_sample) {
      fail("segments " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not contiguous");
    }
  }
  if (segs.back().end_sample != segs.front().start_sample + plan.total_samples) {
    fail("segments do not cover the utterance exactly");
  }
  if (plan.order.size() != segs.size()) {
    fail("order size differs from segment count");
  }
  std::vector<bool> seen(segs.size(), false);
  for (std::size_t p = 0; p < plan.order.size(); ++p) {
    const std::size_t idx = plan.order[p];
    if (idx >= segs.size() || seen[idx]) {
      fail("order is not a permutation");
    }
    seen[idx] = true;
    if ((segs[idx].kind == SegmentKind::Gap || segs[p].kind == SegmentKind::Gap) && idx != p) {
      fail("gap segment moved");
    }
  }
}

SegmentPlan partition(
    const UtteranceAlignment& alignment,
    Unit unit,
    int sample_rate_hz,
    std::optional<std::size_t> total_samples) {
  SegmentPlan plan;
  plan.utterance_id = alignment.utterance_id;
  plan.total_samples = total_samples.value_or(
      seconds_to_sample(alignment.duration_s, sample_rate_hz));
  const std::size_t n = plan.total_samples;
  const auto& tier = unit == Unit::Word ? alignment.words : alignment.phones;

  std::size_t cursor = 0;
  for (const auto& interval : tier) {
    if (interval.is_gap()) {
      continue;
    }
    const std::size_t start =
        std::max(cursor, std::min(n, seconds_to_sample(interval.start_s, sample_rate_hz)));
    const std::size_t end = std::min(n, seconds_to_sample(interval.end_s, sample_rate_hz));
    if (end <= start) {
      continue;
    }
    if (start > cursor) {
      plan.segments.push_back({cursor, start, SegmentKind::Gap, {}});
    }
    plan.segments.push_back({start, end, SegmentKind::Labeled, interval.label});
    cursor = end;
  }
  const bool any_labeled = std::any_of(
      plan.segments.begin(), plan.segments.end(),
      [](const Segment& s) { return s.kind == SegmentKind::Labeled; });
  if (!any_labeled) {
    throw Error(
        Errc::EmptyTier,
        alignment.utterance_id + ": no labeled " + std::string(to_string(unit)) + " intervals");
  }
  if (cursor < n) {
    plan.segments.push_back({cursor, n, SegmentKind::Gap, {}});
  }
  plan.order.resize(plan.segments.size());
  std::iota(plan.order.begin(), plan.order.end(), std::size_t{0});
  return plan;
}

SegmentPlan shuffle(const SegmentPlan& plan, Rng& rng) {
  SegmentPlan out = plan;
  std::vector<std::size_t> positions;
  for (std::size_t p = 0; p < plan.segments.size(); ++p) {
    if (plan.segments[p].kind == SegmentKind::Labeled) {
      positions.push_back(p);
    }
  }
  std::vector<std::size_t> values(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) {
    values[k] = plan.order[positions[k]];
  }
  fisher_yates(std::span<std::size_t>(values), rng);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    out.order[positions[k]] = values[k];
  }
  return out;
}

SegmentPlan shuffle(const SegmentPlan& plan, Seed seed) {
  Rng rng(seed);
  return shuffle(plan, rng);
}

SegmentPlan random_span(const SegmentPlan& plan, Seed seed) {
  check_plan(plan);
  Rng rng(seed);
  const std::size_t n = plan.total_samples;
  const std::size_t offset = static_cast<std::size_t>(rng.uniform_below(n));

  std::vector<std::size_t> boundaries;
  boundaries.reserve(plan.segments.size());
  for (const auto& s : plan.segments) {
    boundaries.push_back((s.start_sample % n + offset) % n);
  }
  std::sort(boundaries.begin(), boundaries.end());

  SegmentPlan out;
  out.utterance_id = plan.utterance_id;
  out.total_samples = n;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    const std::size_t end = i + 1 < boundaries.size() ? boundaries[i + 1] : boundaries.front() + n;
    out.segments.push_back({boundaries[i], end, SegmentKind::Labeled, {}});
  }
  out.order.resize(out.segments.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  return shuffle(out, rng);
}

AudioBuffer render(const SegmentPlan& plan, const AudioBuffer& audio) {
  if (audio.size() != plan.total_samples) {
    throw Error(
        Errc::LengthMismatch,
        plan.utterance_id + ": audio has " + std::to_string(audio.size()) +
            " samples, plan expects " + std::to_string(plan.total_samples));
  }
  check_plan(plan);
  const auto in = audio.samples();
  const std::size_t n = plan.total_samples;
  std::vector<std::int16_t> out;
  out.reserve(n);
  for (std::size_t idx : plan.order) {
    const Segment& s = plan.segments[idx];
    const std::size_t first_end = std::min(s.end_sample, n);
    out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(s.start_sample),
               in.begin() + static_cast<std::ptrdiff_t>(first_end));
    if (s.end_sample > n) {
      out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(s.end_sample - n));
    }
  }
  return AudioBuffer(std::move(out), audio.sample_rate_hz());
}

std::string plan_to_tsv(const SegmentPlan& plan) {
  std::vector<std::size_t> position(plan.order.size());
  for (std::size_t p = 0; p < plan.order.size(); ++p) {
    position[plan.order[p]] = p;
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const Segment& s = plan.segments[i];
    out << plan.utterance_id << '\t' << i << '\t' << to_string(s.kind) << '\t' << s.label << '\t'
        << s.start_sample << '\t' << s.end_sample << '\t' << position[i] << '\n';
  }
  return out.str();
}

} // namespace speechfactor
