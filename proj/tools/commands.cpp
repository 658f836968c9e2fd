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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "parallel.hpp"
#include "speechfactor/alignment.hpp"
#include "speechfactor/corpus.hpp"
#include "speechfactor/error.hpp"
#include "speechfactor/waveio.hpp"

namespace speechfactor::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UtteranceResult {
  std::string id;
  bool ok = false;
  std::uint64_t samples = 0;
  std::string error;
};

json base_report(const std::string& command, Seed master_seed) {
  return json{
      {"command", command},
      {"tool_version", kToolVersion},
      {"master_seed", master_seed},
  };
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  }
}

void require_dir(const fs::path& dir, const char* what) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(Errc::IoFailure, std::string(what) + " directory not found: " + dir.string());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    throw Error(Errc::IoFailure, "cannot write " + path.string());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoFailure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string manifest_root_for(const std::optional<std::string>& override_root, const fs::path& dir) {
  return override_root.value_or(fs::absolute(dir).lexically_normal().string());
}

// Appends per-utterance status, counts and hours; writes the successful
// utterances to a manifest. Returns the exit code.
int finish_corpus_report(
    json& report,
    const std::vector<UtteranceResult>& results,
    const fs::path& wav_dir,
    const std::string& manifest_root,
    const fs::path& manifest_path,
    int sample_rate_hz) {
  CorpusManifest manifest{manifest_root, {}};
  json rows = json::array();
  std::size_t failures = 0;
  std::uint64_t total_samples = 0;
  for (const auto& r : results) {
    json row{{"id", r.id}, {"status", r.ok ? "ok" : "failed"}};
    if (r.ok) {
      row["samples"] = r.samples;
      total_samples += r.samples;
      if (r.samples > 0) {
        manifest.entries.push_back({r.id + ".wav", r.samples});
      }
    } else {
      row["error"] = r.error;
      ++failures;
    }
    rows.push_back(std::move(row));
  }
  (void)wav_dir;
  write_manifest(manifest, manifest_path);
  report["processed"] = results.size() - failures;
  report["failures"] = failures;
  report["total_samples"] = total_samples;
  report["total_hours"] = static_cast<double>(total_samples) / sample_rate_hz / 3600.0;
  report["utterances"] = std::move(rows);
  return failures == 0 ? kExitOk : kExitPartial;
}

std::optional<fs::path> find_alignment(const fs::path& dir, const std::string& id) {
  for (const char* ext : {".TextGrid", ".textgrid", ".tsv"}) {
    fs::path candidate = dir / (id + ext);
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) {
      return candidate;
    }
  }
  return std::nullopt;
}

std::vector<fs::path> list_wavs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& item : fs::directory_iterator(dir)) {
    if (item.is_regular_file() && item.path().extension() == ".wav") {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string describe(const ValidationReport& findings) {
  std::string out = "alignment invalid:";
  for (const auto& f : findings) {
    out += " [" + std::string(to_string(f.kind)) + " " + f.tier + "#" + std::to_string(f.index) + "]";
  }
  return out;
}

enum class PerturbKind { Shuffle, RandomSpan };

RunReport run_perturb(const PerturbConfig& config, PerturbKind kind) {
  require_dir(config.audio_dir, "audio");
  require_dir(config.alignments_dir, "alignments");
  const fs::path wav_dir = config.out_dir / "wav";
  const fs::path plan_dir = config.out_dir / "plans";
  ensure_dir(wav_dir);
  ensure_dir(plan_dir);

  const std::vector<fs::path> inputs = list_wavs(config.audio_dir);
  std::vector<UtteranceResult> results(inputs.size());
  int rate = kDefaultSampleRate;
  std::vector<int> rates(inputs.size(), 0);

  parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
    UtteranceResult& r = results[i];
    r.id = inputs[i].stem().string();
    try {
      const auto alignment_path = find_alignment(config.alignments_dir, r.id);
      if (!alignment_path) {
        throw Error(Errc::IoFailure, "no alignment for " + r.id);
      }
      const AudioBuffer audio = read_wav(inputs[i]);
      UtteranceAlignment alignment = load_alignment(*alignment_path);
      alignment.utterance_id = r.id;
      const ValidationReport findings = validate(alignment, audio);
      if (!findings.empty()) {
        throw Error(Errc::InvalidArgument, describe(findings));
      }
      const SegmentPlan base = partition(alignment, config.unit, audio.sample_rate_hz(), audio.size());
      const Seed seed = utterance_seed(config.master_seed, r.id);
      const SegmentPlan plan = kind == PerturbKind::Shuffle ? shuffle(base, seed) : random_span(base, seed);
      const AudioBuffer out = render(plan, audio);
      write_wav(out, wav_dir / (r.id + ".wav"));
      write_text(plan_dir / (r.id + ".tsv"), plan_to_tsv(plan));
      r.samples = out.size();
      rates[i] = out.sample_rate_hz();
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  for (int r : rates) {
    if (r > 0) {
      rate = r;
      break;
    }
  }

  RunReport report;
  report.json = base_report(kind == PerturbKind::Shuffle ? "shuffle" : "randspan", config.master_seed);
  report.json["unit"] = std::string(to_string(config.unit));
  report.exit_code = finish_corpus_report(
      report.json, results, wav_dir, manifest_root_for(config.manifest_root, wav_dir),
      config.out_dir / "manifest.tsv", rate);
  write_text(config.out_dir / "report.json", report.json.dump(2) + "\n");
  return report;
}

std::string synth_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth-%08zu", index);
  return buf;
}

std::string_view to_string(SynthMode mode) {
  switch (mode) {
    case SynthMode::Language:
      return "language";
    case SynthMode::WordNoise:
      return "word-noise";
    case SynthMode::WhiteNoise:
      return "white-noise";
  }
  return "unknown";
}

struct SynthJob {
  std::string id;
  std::vector<WordId> sentence;
  std::size_t num_samples = 0;
  Seed render_seed = 0;
};

} // namespace

RunReport cmd_shuffle(const PerturbConfig& config) {
  return run_perturb(config, PerturbKind::Shuffle);
}

RunReport cmd_randspan(const PerturbConfig& config) {
  return run_perturb(config, PerturbKind::RandomSpan);
}

RunReport cmd_synthlang(const SynthConfig& config) {
  if (!(config.hours > 0.0)) {
    throw Error(Errc::InvalidArgument, "--hours must be positive");
  }
  config.render.validate();
  const int rate = config.render.sample_rate_hz;
  const fs::path wav_dir = config.out_dir / "wav";
  ensure_dir(wav_dir);

  const PhoneInventory inventory = build_inventory(utterance_seed(config.master_seed, "inventory"));
  Lexicon lexicon;
  if (config.mode != SynthMode::WhiteNoise) {
    write_text(config.out_dir / "inventory.json", inventory_to_json(inventory));
  }
  if (config.mode == SynthMode::Language) {
    lexicon = build_lexicon(
        inventory, config.language.vocab_size, config.language.word_length,
        utterance_seed(config.master_seed, "lexicon"));
    write_text(config.out_dir / "lexicon.json", lexicon_to_json(lexicon));
  }

  const auto min_noise = static_cast<std::int64_t>(std::llround(config.noise_utt_min_s * rate));
  const auto max_noise = static_cast<std::int64_t>(std::llround(config.noise_utt_max_s * rate));
  if (config.mode != SynthMode::Language && (min_noise < 1 || min_noise > max_noise)) {
    throw Error(Errc::InvalidArgument, "invalid noise utterance length range");
  }

  // Plan sequentially (cheap), render in parallel.
  const double target = config.hours * 3600.0 * rate;
  std::vector<SynthJob> jobs;
  double planned = 0.0;
  while (planned < target) {
    SynthJob job;
    job.id = synth_id(jobs.size());
    Rng rng(utterance_seed(config.master_seed, job.id));
    if (config.mode == SynthMode::Language) {
      job.sentence = sample_sentence(lexicon, config.language.sentence_length, rng.derive());
      job.render_seed = rng.derive();
      job.num_samples = utterance_length(job.sentence, lexicon, inventory, config.render, job.render_seed);
    } else {
      job.num_samples = static_cast<std::size_t>(rng.uniform_int(min_noise, max_noise));
      job.render_seed = rng.derive();
    }
    planned += static_cast<double>(job.num_samples);
    jobs.push_back(std::move(job));
  }

  std::vector<UtteranceResult> results(jobs.size());
  parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
    const SynthJob& job = jobs[i];
    UtteranceResult& r = results[i];
    r.id = job.id;
    try {
      AudioBuffer audio;
      switch (config.mode) {
        case SynthMode::Language:
          audio = render_utterance(job.sentence, lexicon, inventory, config.render, job.render_seed);
          break;
        case SynthMode::WordNoise:
          audio = word_noise_sequence(config.render, inventory, job.num_samples, job.render_seed);
          break;
        case SynthMode::WhiteNoise:
          audio = white_noise(job.num_samples, job.render_seed, config.white_noise_volume, rate);
          break;
      }
      write_wav(audio, wav_dir / (job.id + ".wav"));
      r.samples = audio.size();
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });

  if (config.mode == SynthMode::Language) {
    std::ostringstream transcript;
    for (const auto& job : jobs) {
      transcript << job.id << '\t';
      for (std::size_t w = 0; w < job.sentence.size(); ++w) {
        transcript << (w ? " " : "") << job.sentence[w];
      }
      transcript << '\n';
    }
    write_text(config.out_dir / "transcript.tsv", transcript.str());
  }

  RunReport report;
  report.json = base_report("synthlang", config.master_seed);
  report.json["mode"] = std::string(to_string(config.mode));
  report.json["target_hours"] = config.hours;
  report.exit_code = finish_corpus_report(
      report.json, results, wav_dir, manifest_root_for(config.manifest_root, wav_dir),
      config.out_dir / "manifest.tsv", rate);
  write_text(config.out_dir / "report.json", report.json.dump(2) + "\n");
  return report;
}

RunReport cmd_chunk(const ChunkConfig& config) {
  const std::vector<TranscriptLine> lines = read_transcripts(config.transcripts);
  std::vector<ChunkPlan> plans;
  json rows = json::array();
  std::size_t failures = 0;
  std::size_t total_chunks = 0;
  for (const auto& line : lines) {
    try {
      const std::vector<std::string> words = split_words(line.text);
      plans.push_back(chunk_words(line.utterance_id, words, config.span));
      total_chunks += plans.back().chunks.size();
      rows.push_back({{"id", line.utterance_id}, {"status", "ok"}, {"chunks", plans.back().chunks.size()}});
    } catch (const Error& e) {
      ++failures;
      rows.push_back({{"id", line.utterance_id}, {"status", "failed"}, {"error", e.what()}});
    }
  }
  write_text(config.out_file, chunk_plans_to_tsv(plans));
  RunReport report;
  report.json = base_report("chunk", 0);
  report.json["span"] = config.span.to_string();
  report.json["processed"] = plans.size();
  report.json["failures"] = failures;
  report.json["total_chunks"] = total_chunks;
  report.json["utterances"] = std::move(rows);
  report.exit_code = failures == 0 ? kExitOk : kExitPartial;
  return report;
}

RunReport cmd_assemble(const AssembleConfig& config) {
  require_dir(config.chunks_dir, "chunks");
  const std::vector<ChunkPlan> plans = chunk_plans_from_tsv(read_text(config.plan_file));
  const fs::path wav_dir = config.out_dir / "wav";
  ensure_dir(wav_dir);
  std::vector<UtteranceResult> results(plans.size());
  std::vector<int> rates(plans.size(), 0);
  parallel_for(plans.size(), config.workers, [&](std::size_t i) {
    const ChunkPlan& plan = plans[i];
    UtteranceResult& r = results[i];
    r.id = plan.utterance_id;
    try {
      std::vector<AudioBuffer> chunks;
      for (std::size_t c = 0;; ++c) {
        const fs::path path = config.chunks_dir / chunk_wav_name(plan.utterance_id, c);
        std::error_code ec;
        if (!fs::is_regular_file(path, ec)) {
          break;
        }
        chunks.push_back(read_wav(path));
      }
      const AudioBuffer audio = assemble(plan, chunks, config.gap_ms);
      write_wav(audio, wav_dir / (r.id + ".wav"));
      r.samples = audio.size();
      rates[i] = audio.sample_rate_hz();
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  int rate = kDefaultSampleRate;
  for (int r : rates) {
    if (r > 0) {
      rate = r;
      break;
    }
  }
  RunReport report;
  report.json = base_report("assemble", 0);
  report.json["gap_ms"] = config.gap_ms;
  report.exit_code = finish_corpus_report(
      report.json, results, wav_dir, manifest_root_for(config.manifest_root, wav_dir),
      config.out_dir / "manifest.tsv", rate);
  write_text(config.out_dir / "report.json", report.json.dump(2) + "\n");
  return report;
}

RunReport cmd_speaker_split(const SpeakerSplitConfig& config) {
  std::vector<std::string> ids;
  {
    std::istringstream in(read_text(config.ids_file));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      const std::string id = line.substr(0, line.find('\t'));
      if (!id.empty()) {
        ids.push_back(id);
      }
    }
  }
  const SpeakerAssignment assignment =
      speaker_split(ids, config.n_speakers, config.master_seed, config.max_speakers);
  std::ostringstream out;
  for (const auto& id : ids) {
    out << id << '\t' << assignment.at(id) << '\n';
  }
  write_text(config.out_file, out.str());
  const std::vector<std::size_t> counts = speaker_counts(assignment, config.n_speakers);
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  RunReport report;
  report.json = base_report("speaker-split", config.master_seed);
  report.json["n_speakers"] = config.n_speakers;
  report.json["processed"] = ids.size();
  report.json["failures"] = 0;
  report.json["speaker_counts"] = counts;
  report.json["balance"] = *hi - *lo;
  return report;
}

RunReport cmd_manifest(const ManifestConfig& config) {
  RunReport report;
  report.json = base_report("manifest", 0);
  int rate = kDefaultSampleRate;
  CorpusManifest manifest;
  if (config.verify_file) {
    manifest = read_manifest(*config.verify_file, false);
    try {
      verify_manifest(manifest);
      report.json["verified"] = true;
    } catch (const Error& e) {
      report.json["verified"] = false;
      report.json["error"] = e.what();
      report.exit_code = kExitPartial;
    }
  } else {
    if (!config.scan_root || !config.out_file) {
      throw Error(Errc::InvalidArgument, "manifest needs --root and --out, or --verify");
    }
    manifest = scan_manifest(*config.scan_root);
    write_manifest(manifest, *config.out_file);
    if (!manifest.entries.empty()) {
      rate = read_wav_info(fs::path(manifest.root) / manifest.entries.front().relative_path).sample_rate_hz;
    }
  }
  std::uint64_t total = 0;
  for (const auto& e : manifest.entries) {
    total += e.num_samples;
  }
  report.json["root"] = manifest.root;
  report.json["processed"] = manifest.entries.size();
  report.json["failures"] = report.exit_code == kExitOk ? 0 : 1;
  report.json["total_samples"] = total;
  report.json["total_hours"] = static_cast<double>(total) / rate / 3600.0;
  return report;
}

RunReport cmd_stats(const StatsConfig& config) {
  const std::vector<TranscriptLine> lines = read_transcripts(config.transcripts);
  std::vector<std::string> texts;
  texts.reserve(lines.size());
  for (const auto& l : lines) {
    texts.push_back(l.text);
  }
  const LexiconStats stats = lexicon_stats(texts);
  RunReport report;
  report.json = base_report("stats", 0);
  report.json["processed"] = lines.size();
  report.json["failures"] = 0;
  report.json["token_count"] = stats.token_count;
  report.json["type_count"] = stats.type_count;
  return report;
}

std::size_t default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      return static_cast<std::size_t>(value);
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Builds domain-factor-perturbed speech corpora."};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "TOML run file with flag values (sections per subcommand)");
  app.require_subcommand(1);

  std::size_t workers = default_workers();
  std::optional<std::string> report_path;
  app.add_option("--workers", workers, "Worker threads")->envname(kWorkersEnv)->check(CLI::PositiveNumber);
  app.add_option("--report", report_path, "Also write the JSON report to this path");

  const std::map<std::string, Unit> units{{"word", Unit::Word}, {"phone", Unit::Phone}};
  PerturbConfig perturb;
  std::string unit_text = "word";
  std::string manifest_root;
  const auto add_perturb = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--unit", unit_text, "word | phone")->check(CLI::IsMember({"word", "phone"}));
    sub->add_option("--alignments", perturb.alignments_dir, "Directory of TextGrid/TSV alignments")->required();
    sub->add_option("--audio", perturb.audio_dir, "Directory of 16-bit mono WAV files")->required();
    sub->add_option("--out", perturb.out_dir, "Output directory")->required();
    sub->add_option("--seed", perturb.master_seed, "Master seed")->required();
    sub->add_option("--manifest-root", manifest_root, "Root line written to the manifest");
    return sub;
  };
  CLI::App* shuffle_cmd = add_perturb("shuffle", "Shuffle words or phones within each utterance");
  CLI::App* randspan_cmd = add_perturb("randspan", "Random-start segmentation baseline");

  SynthConfig synth;
  const std::map<std::string, SynthMode> modes{
      {"language", SynthMode::Language}, {"word-noise", SynthMode::WordNoise}, {"white-noise", SynthMode::WhiteNoise}};
  CLI::App* synth_cmd = app.add_subcommand("synthlang", "Generate a synthetic phone-language corpus");
  synth_cmd->add_option("--hours", synth.hours, "Target corpus duration in hours")->required();
  synth_cmd->add_option("--seed", synth.master_seed, "Master seed")->required();
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  std::string mode_text = "language";
  synth_cmd->add_option("--mode", mode_text, "language | word-noise | white-noise")
      ->check(CLI::IsMember({"language", "word-noise", "white-noise"}));
  synth_cmd->add_option("--vocab-size", synth.language.vocab_size, "Lexicon size");
  synth_cmd->add_option("--word-len-min", synth.language.word_length.min, "Minimum phones per word");
  synth_cmd->add_option("--word-len-max", synth.language.word_length.max, "Maximum phones per word");
  synth_cmd->add_option("--sent-len-min", synth.language.sentence_length.min, "Minimum words per sentence");
  synth_cmd->add_option("--sent-len-max", synth.language.sentence_length.max, "Maximum words per sentence");
  synth_cmd->add_option("--phone-ms", synth.render.phone_base_ms, "Mean phone duration");
  synth_cmd->add_option("--phone-jitter-ms", synth.render.phone_jitter_ms, "Phone duration jitter");
  synth_cmd->add_option("--word-unit-ms", synth.render.word_unit_base_ms, "Mean word-noise unit duration");
  synth_cmd->add_option("--word-unit-jitter-ms", synth.render.word_unit_jitter_ms, "Word-noise unit jitter");
  synth_cmd->add_option("--volume-min", synth.render.volume_min, "Minimum sampled peak amplitude");
  synth_cmd->add_option("--volume-max", synth.render.volume_max, "Maximum sampled peak amplitude");
  synth_cmd->add_option("--white-volume", synth.white_noise_volume, "Clip level for white noise");
  synth_cmd->add_option("--noise-utt-min-s", synth.noise_utt_min_s, "Shortest noise utterance");
  synth_cmd->add_option("--noise-utt-max-s", synth.noise_utt_max_s, "Longest noise utterance");
  synth_cmd->add_option("--sample-rate", synth.render.sample_rate_hz, "Output sample rate");
  synth_cmd->add_option("--manifest-root", manifest_root, "Root line written to the manifest");

  ChunkConfig chunk;
  std::string span_text = "6";
  CLI::App* chunk_cmd = app.add_subcommand("chunk", "Split transcripts into N-word synthesis jobs");
  chunk_cmd->add_option("--transcripts", chunk.transcripts, "utterance_id<TAB>text file")->required();
  chunk_cmd->add_option("--span", span_text, "Words per chunk, or 'unbounded'");
  chunk_cmd->add_option("--out", chunk.out_file, "Job list TSV")->required();

  AssembleConfig assemble_config;
  CLI::App* assemble_cmd = app.add_subcommand("assemble", "Concatenate synthesized chunks");
  assemble_cmd->add_option("--plan", assemble_config.plan_file, "Job list TSV from 'chunk'")->required();
  assemble_cmd->add_option("--chunks", assemble_config.chunks_dir, "Directory of <utt>.<i>.wav files")->required();
  assemble_cmd->add_option("--out", assemble_config.out_dir, "Output directory")->required();
  assemble_cmd->add_option("--gap-ms", assemble_config.gap_ms, "Silence between chunks");
  assemble_cmd->add_option("--manifest-root", manifest_root, "Root line written to the manifest");

  SpeakerSplitConfig split;
  CLI::App* split_cmd = app.add_subcommand("speaker-split", "Assign utterances evenly to speakers");
  split_cmd->add_option("--ids", split.ids_file, "Utterance ids (first TSV column)")->required();
  split_cmd->add_option("--speakers", split.n_speakers, "Number of speakers")->required();
  split_cmd->add_option("--max-speakers", split.max_speakers, "Speakers available");
  split_cmd->add_option("--seed", split.master_seed, "Master seed")->required();
  split_cmd->add_option("--out", split.out_file, "utterance_id<TAB>speaker output")->required();

  ManifestConfig manifest;
  CLI::App* manifest_cmd = app.add_subcommand("manifest", "Write or verify a corpus manifest");
  manifest_cmd->add_option("--root", manifest.scan_root, "Directory to scan for WAV files");
  manifest_cmd->add_option("--out", manifest.out_file, "Manifest to write");
  manifest_cmd->add_option("--verify", manifest.verify_file, "Manifest to check against its WAV files");

  StatsConfig stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Token and type counts over transcripts");
  stats_cmd->add_option("--transcripts", stats.transcripts, "utterance_id<TAB>text file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto root_override = [&]() -> std::optional<std::string> {
    if (manifest_root.empty()) {
      return std::nullopt;
    }
    return manifest_root;
  };

  RunReport report;
  try {
    if (*shuffle_cmd || *randspan_cmd) {
      perturb.unit = units.at(unit_text);
      perturb.workers = workers;
      perturb.manifest_root = root_override();
      report = *shuffle_cmd ? cmd_shuffle(perturb) : cmd_randspan(perturb);
    } else if (*synth_cmd) {
      synth.mode = modes.at(mode_text);
      synth.workers = workers;
      synth.manifest_root = root_override();
      report = cmd_synthlang(synth);
    } else if (*chunk_cmd) {
      chunk.span = ChunkSpan::parse(span_text);
      report = cmd_chunk(chunk);
    } else if (*assemble_cmd) {
      assemble_config.workers = workers;
      assemble_config.manifest_root = root_override();
      report = cmd_assemble(assemble_config);
    } else if (*split_cmd) {
      report = cmd_speaker_split(split);
    } else if (*manifest_cmd) {
      report = cmd_manifest(manifest);
    } else if (*stats_cmd) {
      report = cmd_stats(stats);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string text = report.json.dump(2) + "\n";
  std::cout << text;
  if (report_path) {
    write_text(*report_path, text);
  }
  return report.exit_code;
}

} // namespace speechfactor::cli
