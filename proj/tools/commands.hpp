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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "speechfactor/perturb.hpp"
#include "speechfactor/prosody.hpp"
#include "speechfactor/rng.hpp"
#include "speechfactor/synthlang.hpp"

namespace speechfactor::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kWorkersEnv = "SPEECHFACTOR_WORKERS";

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitUsage = 2 };

struct RunReport {
  nlohmann::json json;
  int exit_code = kExitOk;
};

struct PerturbConfig {
  std::filesystem::path alignments_dir;
  std::filesystem::path audio_dir;
  std::filesystem::path out_dir;
  Unit unit = Unit::Word;
  Seed master_seed = 0;
  std::size_t workers = 1;
  std::optional<std::string> manifest_root;
};

enum class SynthMode { Language, WordNoise, WhiteNoise };

struct SynthConfig {
  double hours = 0.0;
  Seed master_seed = 0;
  std::filesystem::path out_dir;
  SynthMode mode = SynthMode::Language;
  LanguageConfig language;
  RenderParams render;
  // Utterance length range for the noise modes, in seconds.
  double noise_utt_min_s = 2.0;
  double noise_utt_max_s = 12.0;
  double white_noise_volume = 0.5;
  std::size_t workers = 1;
  std::optional<std::string> manifest_root;
};

struct ChunkConfig {
  std::filesystem::path transcripts;
  ChunkSpan span = ChunkSpan::words(6);
  std::filesystem::path out_file;
};

struct AssembleConfig {
  std::filesystem::path plan_file;
  std::filesystem::path chunks_dir;
  std::filesystem::path out_dir;
  double gap_ms = 0.0;
  std::size_t workers = 1;
  std::optional<std::string> manifest_root;
};

struct SpeakerSplitConfig {
  std::filesystem::path ids_file;
  std::size_t n_speakers = 1;
  std::size_t max_speakers = 109;
  Seed master_seed = 0;
  std::filesystem::path out_file;
};

struct ManifestConfig {
  std::optional<std::filesystem::path> scan_root;
  std::optional<std::filesystem::path> out_file;
  std::optional<std::filesystem::path> verify_file;
};

struct StatsConfig {
  std::filesystem::path transcripts;
};

// Commands throw speechfactor::Error for configuration and I/O problems that
// stop the whole run; per-utterance failures are recorded in the report.
RunReport cmd_shuffle(const PerturbConfig& config);
RunReport cmd_randspan(const PerturbConfig& config);
RunReport cmd_synthlang(const SynthConfig& config);
RunReport cmd_chunk(const ChunkConfig& config);
RunReport cmd_assemble(const AssembleConfig& config);
RunReport cmd_speaker_split(const SpeakerSplitConfig& config);
RunReport cmd_manifest(const ManifestConfig& config);
RunReport cmd_stats(const StatsConfig& config);

/// Worker count from SPEECHFACTOR_WORKERS, else hardware concurrency.
std::size_t default_workers();

/// Full command-line entry point. Prints the JSON report on stdout and
/// returns the process exit code.
int run(int argc, const char* const* argv);

} // namespace speechfactor::cli
