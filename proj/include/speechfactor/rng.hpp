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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace speechfactor {

using Seed = std::uint64_t;

/// 64-bit FNV-1a over the bytes of `text`. Stable across platforms and runs.
std::uint64_t stable_hash(std::string_view text);

/// Seed for one utterance: master_seed XOR stable_hash(utterance_id). Output
/// never depends on the order in which utterances are processed.
inline Seed utterance_seed(Seed master_seed, std::string_view utterance_id) {
  return master_seed ^ stable_hash(utterance_id);
}

/// Deterministic generator used by every sampling step.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so all
/// derived draws are implemented here:
///   - uniform_below(n): rejection sampling. Draws x until
///     x >= (2^64 - n) mod n, then returns x mod n.
///   - uniform01(): top 53 bits of one draw, scaled by 2^-53.
///   - gaussian(): Box-Muller on two uniform01() draws, both outputs used.
///   - derive(): one raw draw, used as the seed of a child generator.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Uniform on the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double gaussian();

  Seed derive() { return next_u64(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// In-place Fisher-Yates: for i = n-1 down to 1, swap values[i] with
/// values[uniform_below(i + 1)].
template <typename T>
void fisher_yates(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

} // namespace speechfactor
