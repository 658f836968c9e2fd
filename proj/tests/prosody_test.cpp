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

#include <gtest/gtest.h>

#include "speechfactor/error.hpp"
#include "speechfactor/prosody.hpp"

using namespace speechfactor;

namespace {

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> w;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back("w" + std::to_string(i));
  }
  return w;
}

std::vector<std::size_t> chunk_sizes(const ChunkPlan& plan) {
  std::vector<std::size_t> sizes;
  for (const auto& c : plan.chunks) {
    sizes.push_back(c.size());
  }
  return sizes;
}

} // namespace

TEST(ChunkSpan, Parse) {
  EXPECT_EQ(ChunkSpan::parse("6"), ChunkSpan::words(6));
  EXPECT_EQ(ChunkSpan::parse("unbounded"), ChunkSpan::unbounded());
  EXPECT_FALSE(ChunkSpan::parse("inf").bounded());
  EXPECT_EQ(ChunkSpan::words(3).to_string(), "3");
  EXPECT_EQ(ChunkSpan::unbounded().to_string(), "unbounded");
  EXPECT_THROW(ChunkSpan::parse("0"), Error);
  EXPECT_THROW(ChunkSpan::parse("-2"), Error);
  EXPECT_THROW(ChunkSpan::parse("6x"), Error);
  EXPECT_THROW(ChunkSpan::parse(""), Error);
}

TEST(Chunking, SevenWordsBySix) {
  const auto words = split_words("six words independently at a time and");
  ASSERT_EQ(words.size(), 7U);
  const ChunkPlan plan = chunk_words("u", words, ChunkSpan::words(6));
  EXPECT_EQ(chunk_sizes(plan), (std::vector<std::size_t>{6, 1}));
  EXPECT_EQ(plan.chunks[1], (std::vector<std::string>{"and"}));
}

TEST(Chunking, UnboundedIsOneChunk) {
  const auto words = numbered(9);
  const ChunkPlan plan = chunk_words("u", words, ChunkSpan::unbounded());
  ASSERT_EQ(plan.chunks.size(), 1U);
  EXPECT_EQ(plan.chunks[0], words);
}

TEST(Chunking, PreservesOrderAndCount) {
  for (std::size_t n = 1; n <= 30; ++n) {
    for (std::size_t k = 1; k <= 8; ++k) {
      const auto words = numbered(n);
      const ChunkPlan plan = chunk_words("u", words, ChunkSpan::words(k));
      ASSERT_EQ(plan.chunks.size(), (n + k - 1) / k);
      std::vector<std::string> joined;
      for (const auto& c : plan.chunks) {
        ASSERT_LE(c.size(), k);
        joined.insert(joined.end(), c.begin(), c.end());
      }
      ASSERT_EQ(joined, words);
    }
  }
  const ChunkPlan twelve = chunk_words("u", numbered(12), ChunkSpan::words(6));
  EXPECT_EQ(chunk_sizes(twelve), (std::vector<std::size_t>{6, 6}));
}

TEST(Chunking, EmptyTranscript) {
  try {
    chunk_words("u", split_words("  \t "), ChunkSpan::words(6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyTranscript);
  }
}

TEST(Assemble, ConcatenatesWithGap) {
  const ChunkPlan plan = chunk_words("u", numbered(7), ChunkSpan::words(6));
  const std::vector<AudioBuffer> audio{
      AudioBuffer(std::vector<std::int16_t>{1, 2, 3}), AudioBuffer(std::vector<std::int16_t>{4, 5})};
  EXPECT_EQ(assemble(plan, audio), AudioBuffer(std::vector<std::int16_t>{1, 2, 3, 4, 5}));
  const AudioBuffer gapped = assemble(plan, audio, 10.0);
  ASSERT_EQ(gapped.size(), 5U + 160U);
  for (std::size_t i = 3; i < 163; ++i) {
    ASSERT_EQ(gapped.samples()[i], 0);
  }
  EXPECT_EQ(gapped.samples()[163], 4);
}

TEST(Assemble, LengthsAdd) {
  const ChunkPlan one = chunk_words("u", numbered(3), ChunkSpan::unbounded());
  const std::vector<AudioBuffer> single{AudioBuffer(std::vector<std::int16_t>{7, 8, 9})};
  EXPECT_EQ(assemble(one, single), single[0]);
  const ChunkPlan two = chunk_words("u", numbered(8), ChunkSpan::words(6));
  const std::vector<AudioBuffer> pair{
      AudioBuffer(std::vector<std::int16_t>(100, 1)), AudioBuffer(std::vector<std::int16_t>(50, 2))};
  EXPECT_EQ(assemble(two, pair).size(), 150U);
  EXPECT_EQ(assemble(two, pair, 10.0).size(), 150U + 160U);
}

TEST(Assemble, ChunkCountMismatch) {
  const ChunkPlan plan = chunk_words("u", numbered(7), ChunkSpan::words(6));
  const std::vector<AudioBuffer> audio{AudioBuffer(std::vector<std::int16_t>{1})};
  try {
    assemble(plan, audio);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ChunkCountMismatch);
  }
}

TEST(ChunkTsv, RoundTrip) {
  const std::vector<ChunkPlan> plans{
      chunk_words("a", numbered(7), ChunkSpan::words(6)),
      chunk_words("b", numbered(3), ChunkSpan::unbounded())};
  const std::string tsv = chunk_plans_to_tsv(plans);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "a\t0\tw0 w1 w2 w3 w4 w5");
  const auto back = chunk_plans_from_tsv(tsv);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0].chunks, plans[0].chunks);
  EXPECT_EQ(back[0].span, ChunkSpan::words(6));
  EXPECT_EQ(back[1].chunks, plans[1].chunks);
  EXPECT_THROW(chunk_plans_from_tsv("a\t1\tx\n"), Error);
  EXPECT_THROW(chunk_plans_from_tsv("a only\n"), Error);
  EXPECT_EQ(chunk_wav_name("utt", 2), "utt.2.wav");
}
