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

#include "speechfactor/alignment.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "speechfactor/error.hpp"

namespace speechfactor {

namespace {

constexpr std::array<std::string_view, 5> kSilenceLabels = {
    "", "sil", "sp", "spn", "<eps>"};

std::string_view trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      out.push_back(c);
    }
  }
  return out;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (nl == std::string_view::npos) {
      if (!line.empty()) {
        lines.push_back(line);
      }
      break;
    }
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

struct RawTier {
  std::string name;
  bool is_interval = false;
  std::vector<AlignmentInterval> intervals;
};

// Line-oriented reader for the long TextGrid layout. Every structural line
// is matched exactly, so short-form and binary files fail on their first
// deviating line.
class TextGridReader {
 public:
  explicit TextGridReader(std::string_view text) : lines_(split_lines(text)) {
    if (!lines_.empty() && lines_[0].starts_with("\xEF\xBB\xBF")) {
      lines_[0].remove_prefix(3);
    }
  }

  std::vector<RawTier> read(double& duration_s) {
    expect_string_key("File type", "ooTextFile");
    expect_string_key("Object class", "TextGrid");
    expect_number("xmin");
    duration_s = expect_number("xmax");
    const Line tiers = next_line("tiers? <exists>");
    const std::string compact = strip_spaces(tiers.text);
    if (compact == "tiers?<absent>") {
      return {};
    }
    if (compact != "tiers?<exists>") {
      fail(tiers.number, "expected 'tiers? <exists>'");
    }
    const std::size_t n_tiers = expect_count("size");
    expect_compact("item[]:");
    std::vector<RawTier> result;
    for (std::size_t k = 1; k <= n_tiers; ++k) {
      result.push_back(read_tier(k));
    }
    for (std::size_t i = next_; i < lines_.size(); ++i) {
      if (!trim(lines_[i]).empty()) {
        fail(i + 1, "unexpected trailing content");
      }
    }
    return result;
  }

 private:
  struct Line {
    std::string_view text;
    std::size_t number = 0;
  };

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw ParseError(Errc::SyntaxError, message, line);
  }

  Line next_line(std::string_view expecting) {
    while (next_ < lines_.size()) {
      const std::string_view t = trim(lines_[next_]);
      ++next_;
      if (!t.empty()) {
        return {t, next_};
      }
    }
    fail(lines_.size() + 1, "unexpected end of input, expected " +
             std::string(expecting));
  }

  // Returns the value text after "key =".
  std::pair<std::string_view, std::size_t> expect_key(std::string_view key) {
    const Line line = next_line(key);
    const std::size_t eq = line.text.find('=');
    if (eq == std::string_view::npos || trim(line.text.substr(0, eq)) != key) {
      fail(line.number, "expected '" + std::string(key) + " = ...'");
    }
    return {trim(line.text.substr(eq + 1)), line.number};
  }

  double expect_number(std::string_view key) {
    const auto [value, number] = expect_key(key);
    const auto parsed = to_number(value);
    if (!parsed) {
      fail(number, "invalid number '" + std::string(value) + "'");
    }
    return *parsed;
  }

  std::size_t expect_count(std::string_view key) {
    const auto [value, number] = expect_key(key);
    std::size_t count = 0;
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), count);
    if (value.empty() || ec != std::errc() ||
        ptr != value.data() + value.size()) {
      fail(number, "invalid count '" + std::string(value) + "'");
    }
    return count;
  }

  // Praat strings double embedded quotes and may span several lines.
  std::string expect_string(std::string_view key) {
    auto [value, number] = expect_key(key);
    if (value.empty() || value.front() != '"') {
      fail(number, "expected quoted string for '" + std::string(key) + "'");
    }
    std::string out;
    std::string_view rest = value.substr(1);
    for (;;) {
      std::size_t i = 0;
      while (i < rest.size()) {
        if (rest[i] == '"') {
          if (i + 1 < rest.size() && rest[i + 1] == '"') {
            out.push_back('"');
            i += 2;
            continue;
          }
          if (!trim(rest.substr(i + 1)).empty()) {
            fail(next_, "unexpected text after closing quote");
          }
          return out;
        }
        out.push_back(rest[i]);
        ++i;
      }
      if (next_ >= lines_.size()) {
        fail(number, "unterminated string");
      }
      out.push_back('\n');
      rest = lines_[next_];
      ++next_;
    }
  }

  void expect_string_key(std::string_view key, std::string_view expected) {
    const std::string value = expect_string(key);
    if (value != expected) {
      fail(next_, "expected \"" + std::string(expected) + "\", found \"" +
               value + "\"");
    }
  }

  void expect_compact(const std::string& expected) {
    const Line line = next_line(expected);
    if (strip_spaces(line.text) != expected) {
      fail(line.number, "expected '" + expected + "'");
    }
  }

  std::size_t expect_list_size(const std::string& list) {
    const Line line = next_line(list + ": size = N");
    const std::string compact = strip_spaces(line.text);
    const std::string prefix = list + ":size=";
    std::size_t count = 0;
    if (!compact.starts_with(prefix)) {
      fail(line.number, "expected '" + list + ": size = N'");
    }
    const std::string_view digits = std::string_view(compact).substr(prefix.size());
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), count);
    if (digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size()) {
      fail(line.number, "invalid list size");
    }
    return count;
  }

  RawTier read_tier(std::size_t k) {
    expect_compact("item[" + std::to_string(k) + "]:");
    RawTier tier;
    const std::string cls = expect_string("class");
    tier.name = expect_string("name");
    expect_number("xmin");
    expect_number("xmax");
    if (cls == "IntervalTier") {
      tier.is_interval = true;
      const std::size_t n = expect_list_size("intervals");
      for (std::size_t j = 1; j <= n; ++j) {
        expect_compact("intervals[" + std::to_string(j) + "]:");
        AlignmentInterval interval;
        interval.start_s = expect_number("xmin");
        interval.end_s = expect_number("xmax");
        const std::size_t end_line = next_;
        interval.label = normalize_label(expect_string("text"));
        if (interval.start_s < 0.0 || !(interval.start_s < interval.end_s)) {
          fail(end_line, "interval must satisfy 0 <= xmin < xmax");
        }
        tier.intervals.push_back(std::move(interval));
      }
    } else if (cls == "TextTier") {
      const std::size_t n = expect_list_size("points");
      for (std::size_t j = 1; j <= n; ++j) {
        expect_compact("points[" + std::to_string(j) + "]:");
        expect_number("number");
        expect_string("mark");
      }
    } else {
      fail(next_, "unknown tier class \"" + cls + "\"");
    }
    return tier;
  }

  std::vector<std::string_view> lines_;
  std::size_t next_ = 0;
};

bool tier_name_matches(std::string_view name, std::string_view wanted) {
  const std::string n = lower(trim(name));
  if (n == wanted) {
    return true;
  }
  const std::string suffix = " - " + std::string(wanted);
  return n.size() > suffix.size() && n.ends_with(suffix);
}

void check_tier_order(const std::vector<AlignmentInterval>& tier, const std::string& name) {
  for (std::size_t i = 1; i < tier.size(); ++i) {
    if (tier[i].start_s < tier[i - 1].end_s - kBoundaryEpsilon) {
      throw ParseError(
          Errc::OverlappingIntervals,
          name + " interval " + std::to_string(i) +
              " starts before the previous one ends",
          0,
          name,
          i);
    }
  }
}

void check_both_tiers(const UtteranceAlignment& a) {
  check_tier_order(a.words, "words");
  check_tier_order(a.phones, "phones");
}

} // namespace

std::string normalize_label(std::string_view label) {
  const std::string_view t = trim(label);
  const std::string l = lower(t);
  for (std::string_view silence : kSilenceLabels) {
    if (l == silence) {
      return {};
    }
  }
  return std::string(t);
}

UtteranceAlignment parse_textgrid(std::string_view text, std::string utterance_id) {
  UtteranceAlignment alignment;
  alignment.utterance_id = std::move(utterance_id);
  TextGridReader reader(text);
  std::vector<RawTier> tiers = reader.read(alignment.duration_s);

  const auto take = [&](std::string_view wanted) {
    for (auto& t : tiers) {
      if (t.is_interval && tier_name_matches(t.name, wanted)) {
        return std::move(t.intervals);
      }
    }
    throw ParseError(
        Errc::MissingTier, "no interval tier named \"" + std::string(wanted) + "\"",
        0, std::string(wanted));
  };
  alignment.words = take("words");
  alignment.phones = take("phones");
  check_both_tiers(alignment);
  return alignment;
}

UtteranceAlignment parse_alignment_tsv(std::string_view text) {
  const std::vector<std::string_view> lines = split_lines(text);
  UtteranceAlignment alignment;
  bool have_header = false;
  bool saw_words = false;
  bool saw_phones = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t number = i + 1;
    std::string_view line = lines[i];
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
      if (tab == std::string_view::npos) {
        break;
      }
      pos = tab + 1;
    }
    if (!have_header) {
      if (!line.starts_with('#') || fields.size() != 2) {
        throw ParseError(Errc::SyntaxError, "expected '#utterance_id<TAB>duration_s'", number);
      }
      alignment.utterance_id = std::string(trim(fields[0].substr(1)));
      const auto duration = to_number(fields[1]);
      if (alignment.utterance_id.empty() || !duration || *duration < 0.0) {
        throw ParseError(Errc::SyntaxError, "invalid header", number);
      }
      alignment.duration_s = *duration;
      have_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(Errc::SyntaxError, "expected 4 tab-separated fields", number);
    }
    const auto start = to_number(fields[2]);
    const auto end = to_number(fields[3]);
    if (!start || !end || *start < 0.0 || !(*start < *end)) {
      throw ParseError(Errc::SyntaxError, "invalid interval bounds", number);
    }
    AlignmentInterval interval{normalize_label(fields[1]), *start, *end};
    const std::string tier = lower(trim(fields[0]));
    if (tier == "words") {
      alignment.words.push_back(std::move(interval));
      saw_words = true;
    } else if (tier == "phones") {
      alignment.phones.push_back(std::move(interval));
      saw_phones = true;
    } else {
      throw ParseError(Errc::SyntaxError, "unknown tier '" + tier + "'", number);
    }
  }
  if (!have_header) {
    throw ParseError(Errc::SyntaxError, "missing header", 1);
  }
  if (!saw_words) {
    throw ParseError(Errc::MissingTier, "no rows for tier \"words\"", 0, "words");
  }
  if (!saw_phones) {
    throw ParseError(Errc::MissingTier, "no rows for tier \"phones\"", 0, "phones");
  }
  check_both_tiers(alignment);
  return alignment;
}

UtteranceAlignment load_alignment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoFailure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (lower(path.extension().string()) == ".tsv") {
    return parse_alignment_tsv(text);
  }
  return parse_textgrid(text, path.stem().string());
}

std::vector<AlignmentInterval> words_from_phones(
    std::span<const AlignmentInterval> phones,
    std::span<const WordGroup> grouping) {
  std::vector<const AlignmentInterval*> labeled;
  for (const auto& p : phones) {
    if (!p.is_gap()) {
      labeled.push_back(&p);
    }
  }
  std::size_t total = 0;
  for (const auto& g : grouping) {
    if (g.phone_count == 0) {
      throw Error(Errc::CountMismatch, "word \"" + g.label + "\" has no phones");
    }
    total += g.phone_count;
  }
  if (total != labeled.size()) {
    throw Error(
        Errc::CountMismatch,
        "grouping covers " + std::to_string(total) + " phones, alignment has " +
            std::to_string(labeled.size()));
  }
  std::vector<AlignmentInterval> words;
  words.reserve(grouping.size());
  std::size_t next = 0;
  for (const auto& g : grouping) {
    const AlignmentInterval& first = *labeled[next];
    const AlignmentInterval& last = *labeled[next + g.phone_count - 1];
    words.push_back({g.label, first.start_s, last.end_s});
    next += g.phone_count;
  }
  return words;
}

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::OutOfBounds:
      return "OutOfBounds";
    case FindingKind::Overlap:
      return "Overlap";
    case FindingKind::Unordered:
      return "Unordered";
    case FindingKind::Degenerate:
      return "Degenerate";
    case FindingKind::UncoveredWord:
      return "UncoveredWord";
    case FindingKind::WordPhoneMismatch:
      return "WordPhoneMismatch";
  }
  return "Unknown";
}

ValidationReport validate(const UtteranceAlignment& alignment, double audio_duration_s) {
  ValidationReport report;
  const auto check_tier = [&](const std::vector<AlignmentInterval>& tier, const std::string& name) {
    for (std::size_t i = 0; i < tier.size(); ++i) {
      const auto& cur = tier[i];
      if (!(cur.start_s < cur.end_s)) {
        report.push_back({FindingKind::Degenerate, name, i, "start >= end"});
      }
      if (cur.start_s < -kBoundaryEpsilon ||
          cur.end_s > audio_duration_s + kBoundaryEpsilon) {
        report.push_back(
            {FindingKind::OutOfBounds, name, i,
             "interval exceeds audio duration " + std::to_string(audio_duration_s) + " s"});
      }
      if (i == 0) {
        continue;
      }
      const auto& prev = tier[i - 1];
      if (cur.start_s < prev.start_s) {
        report.push_back({FindingKind::Unordered, name, i, "starts before its predecessor"});
      } else if (cur.start_s < prev.end_s - kBoundaryEpsilon) {
        report.push_back({FindingKind::Overlap, name, i, "overlaps its predecessor"});
      }
    }
  };
  check_tier(alignment.phones, "phones");
  check_tier(alignment.words, "words");

  const auto near = [](double a, double b) { return std::abs(a - b) <= kBoundaryEpsilon; };
  for (std::size_t i = 0; i < alignment.words.size(); ++i) {
    const auto& w = alignment.words[i];
    if (w.is_gap()) {
      continue;
    }
    bool covered = false;
    bool start_matches = false;
    bool end_matches = false;
    for (const auto& p : alignment.phones) {
      if (p.is_gap()) {
        continue;
      }
      if (p.start_s >= w.start_s - kBoundaryEpsilon && p.end_s <= w.end_s + kBoundaryEpsilon) {
        covered = true;
      }
      start_matches = start_matches || near(p.start_s, w.start_s);
      end_matches = end_matches || near(p.end_s, w.end_s);
    }
    if (!covered) {
      report.push_back({FindingKind::UncoveredWord, "words", i, "word \"" + w.label + "\" spans no phone"});
    } else if (!start_matches || !end_matches) {
      report.push_back(
          {FindingKind::WordPhoneMismatch, "words", i,
           "word \"" + w.label + "\" boundaries do not coincide with phone boundaries"});
    }
  }
  return report;
}

ValidationReport validate(const UtteranceAlignment& alignment, const AudioBuffer& audio) {
  return validate(alignment, audio.duration_s());
}

} // namespace speechfactor
