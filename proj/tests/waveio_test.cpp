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

#include <cstring>
#include <fstream>

#include "speechfactor/error.hpp"
#include "speechfactor/rng.hpp"
#include "speechfactor/waveio.hpp"
#include "test_support.hpp"

using namespace speechfactor;
namespace fs = std::filesystem;

namespace {

AudioBuffer random_buffer(Rng& rng, std::size_t max_len) {
  std::vector<std::int16_t> s(static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_len))));
  for (auto& x : s) {
    x = static_cast<std::int16_t>(rng.uniform_int(-32768, 32767));
  }
  return AudioBuffer(std::move(s), kDefaultSampleRate);
}

std::vector<std::byte> header_with(std::uint16_t format, std::uint16_t channels, std::uint16_t bits) {
  std::vector<std::byte> bytes = encode_wav(AudioBuffer(std::vector<std::int16_t>(8, 1)));
  const auto put16 = [&](std::size_t at, std::uint16_t v) {
    bytes[at] = static_cast<std::byte>(v & 0xFF);
    bytes[at + 1] = static_cast<std::byte>(v >> 8);
  };
  put16(20, format);
  put16(22, channels);
  put16(34, bits);
  return bytes;
}

Errc decode_error(std::span<const std::byte> bytes) {
  try {
    decode_wav(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

} // namespace

TEST(SampleCodec, RoundTripsEveryInt16) {
  for (int s = -32768; s <= 32767; ++s) {
    const auto v = static_cast<std::int16_t>(s);
    ASSERT_EQ(encode_sample(decode_sample(v)), v);
  }
}

TEST(SampleCodec, ClampsOutOfRange) {
  EXPECT_EQ(encode_sample(1.0), 32767);
  EXPECT_EQ(encode_sample(5.0), 32767);
  EXPECT_EQ(encode_sample(-1.0), -32768);
  EXPECT_EQ(encode_sample(-7.0), -32768);
  EXPECT_EQ(encode_sample(0.0), 0);
}

TEST(WaveIo, SixteenThousandSampleFile) {
  const auto dir = support::scratch_dir("wav16k");
  write_wav(AudioBuffer(std::vector<std::int16_t>(16000, 3), 16000), dir / "a.wav");
  const AudioBuffer back = read_wav(dir / "a.wav");
  EXPECT_EQ(back.size(), 16000U);
  EXPECT_EQ(back.sample_rate_hz(), 16000);
  const WavInfo info = read_wav_info(dir / "a.wav");
  EXPECT_EQ(info.num_samples, 16000U);
}

TEST(WaveIo, EmptyBufferHas44ByteHeader) {
  const auto bytes = encode_wav(AudioBuffer());
  EXPECT_EQ(bytes.size(), 44U);
  EXPECT_EQ(decode_wav(bytes).size(), 0U);
}

TEST(WaveIo, DataChunkIsTwoBytesPerSample) {
  const auto dir = support::scratch_dir("wav480");
  write_wav(AudioBuffer(std::vector<std::int16_t>(480, -5)), dir / "b.wav");
  EXPECT_EQ(fs::file_size(dir / "b.wav"), 44U + 960U);
  const auto bytes = encode_wav(AudioBuffer(std::vector<std::int16_t>(480, -5)));
  std::uint32_t data_size = 0;
  std::memcpy(&data_size, bytes.data() + 40, 4);
  EXPECT_EQ(data_size, 960U);
}

TEST(WaveIo, RoundTripOverRandomBuffers) {
  const auto dir = support::scratch_dir("wavrt");
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const AudioBuffer b = random_buffer(rng, 2000);
    const fs::path path = dir / "rt.wav";
    write_wav(b, path);
    ASSERT_EQ(read_wav(path), b) << "buffer " << i;
  }
}

TEST(WaveIo, ReadsFilesWrittenByPythonWave) {
  const AudioBuffer fox = read_wav(support::data_dir() / "audio" / "fox.wav");
  EXPECT_EQ(fox.sample_rate_hz(), 16000);
  EXPECT_EQ(fox.size(), 67920U);  // round(4.245 s * 16 kHz)
}

TEST(WaveIo, RejectsNonPcm16Mono) {
  EXPECT_EQ(decode_error(header_with(1, 2, 16)), Errc::NotPcm16Mono);  // stereo
  EXPECT_EQ(decode_error(header_with(3, 1, 32)), Errc::NotPcm16Mono);  // float
  EXPECT_EQ(decode_error(header_with(1, 1, 8)), Errc::NotPcm16Mono);
  EXPECT_NO_THROW(decode_wav(header_with(1, 1, 16)));
}

TEST(WaveIo, RejectsMalformedHeaders) {
  auto bytes = encode_wav(AudioBuffer(std::vector<std::int16_t>(10, 1)));
  auto no_riff = bytes;
  no_riff[0] = std::byte{'X'};
  EXPECT_EQ(decode_error(no_riff), Errc::MalformedHeader);
  auto truncated = bytes;
  truncated.resize(50);
  EXPECT_EQ(decode_error(truncated), Errc::MalformedHeader);
  EXPECT_EQ(decode_error(std::span(bytes).first(20)), Errc::MalformedHeader);
}

TEST(WaveIo, SkipsUnknownChunks) {
  auto bytes = encode_wav(AudioBuffer(std::vector<std::int16_t>{1, 2, 3}));
  // Insert an odd-sized LIST chunk (with pad byte) between fmt and data.
  const std::vector<std::byte> extra{
      std::byte{'L'}, std::byte{'I'}, std::byte{'S'}, std::byte{'T'},
      std::byte{3}, std::byte{0}, std::byte{0}, std::byte{0},
      std::byte{'a'}, std::byte{'b'}, std::byte{'c'}, std::byte{0}};
  bytes.insert(bytes.begin() + 36, extra.begin(), extra.end());
  const AudioBuffer b = decode_wav(bytes);
  ASSERT_EQ(b.size(), 3U);
  EXPECT_EQ(b.samples()[2], 3);
}

TEST(WaveIo, MissingFileIsIoFailure) {
  try {
    read_wav("/nonexistent/speechfactor.wav");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoFailure);
  }
}

TEST(Concat, IdentityAndLengths) {
  const AudioBuffer a(std::vector<std::int16_t>(100, 7));
  const AudioBuffer b(std::vector<std::int16_t>(50, -7));
  EXPECT_EQ(concat(std::vector<AudioBuffer>{a}), a);
  const AudioBuffer ab = concat(std::vector<AudioBuffer>{a, b});
  ASSERT_EQ(ab.size(), 150U);
  EXPECT_EQ(ab.slice(0, 100), a);
  EXPECT_EQ(ab.slice(100, 150), b);
  EXPECT_EQ(concat(std::vector<AudioBuffer>{}).size(), 0U);
}

TEST(Concat, IsAssociativeAndAdditive) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const AudioBuffer a = random_buffer(rng, 64), b = random_buffer(rng, 64), c = random_buffer(rng, 64);
    const AudioBuffer left = concat(std::vector<AudioBuffer>{concat(std::vector<AudioBuffer>{a, b}), c});
    const AudioBuffer flat = concat(std::vector<AudioBuffer>{a, b, c});
    ASSERT_EQ(left, flat);
    ASSERT_EQ(flat.size(), a.size() + b.size() + c.size());
  }
}

TEST(Concat, RejectsMixedRates) {
  const AudioBuffer a(std::vector<std::int16_t>(10), 16000);
  const AudioBuffer b(std::vector<std::int16_t>(10), 8000);
  try {
    concat(std::vector<AudioBuffer>{a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SampleRateMismatch);
  }
}
