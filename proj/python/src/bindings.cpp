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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "commands.hpp"
#include "speechfactor/alignment.hpp"
#include "speechfactor/corpus.hpp"
#include "speechfactor/error.hpp"
#include "speechfactor/perturb.hpp"
#include "speechfactor/prosody.hpp"
#include "speechfactor/rng.hpp"
#include "speechfactor/synthlang.hpp"
#include "speechfactor/waveio.hpp"

namespace py = pybind11;
using namespace speechfactor;

namespace {

py::array_t<std::int16_t> to_numpy(const AudioBuffer& audio) {
  py::array_t<std::int16_t> out(static_cast<py::ssize_t>(audio.size()));
  std::copy(audio.samples().begin(), audio.samples().end(), out.mutable_data());
  return out;
}

AudioBuffer from_numpy(py::array_t<std::int16_t, py::array::c_style | py::array::forcecast> samples, int rate) {
  if (samples.ndim() != 1) {
    throw Error(Errc::InvalidArgument, "samples must be one-dimensional");
  }
  const std::int16_t* p = samples.data();
  return AudioBuffer(std::vector<std::int16_t>(p, p + samples.size()), rate);
}

} // namespace

PYBIND11_MODULE(_speechfactor, m) {
  m.doc() = "Native core of speechfactor.";

  // Held for the life of the interpreter.
  static PyObject* error_type = py::exception<Error>(m, "SpeechFactorError", PyExc_RuntimeError).release().ptr();
  static PyObject* parse_error_type = py::exception<ParseError>(m, "ParseError", error_type).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const ParseError& e) {
      py::object exc = py::handle(parse_error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("line") = e.line();
      exc.attr("tier") = e.tier();
      exc.attr("index") = e.index();
      PyErr_SetObject(parse_error_type, exc.ptr());
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("utterance_seed", &utterance_seed, py::arg("master_seed"), py::arg("utterance_id"));

  py::class_<AudioBuffer>(m, "AudioBuffer")
      .def(py::init(&from_numpy), py::arg("samples"), py::arg("sample_rate_hz") = kDefaultSampleRate)
      .def_property_readonly("samples", &to_numpy)
      .def_property_readonly("sample_rate_hz", &AudioBuffer::sample_rate_hz)
      .def_property_readonly("duration_s", &AudioBuffer::duration_s)
      .def("normalized", [](const AudioBuffer& a) { return py::array(py::cast(a.normalized())); })
      .def("__len__", &AudioBuffer::size)
      .def("__eq__", [](const AudioBuffer& a, const AudioBuffer& b) { return a == b; });
  m.def("read_wav", &read_wav, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("audio"), py::arg("path"));

  py::class_<AlignmentInterval>(m, "AlignmentInterval")
      .def_readonly("label", &AlignmentInterval::label)
      .def_readonly("start_s", &AlignmentInterval::start_s)
      .def_readonly("end_s", &AlignmentInterval::end_s)
      .def("is_gap", &AlignmentInterval::is_gap);
  py::class_<UtteranceAlignment>(m, "UtteranceAlignment")
      .def_readonly("utterance_id", &UtteranceAlignment::utterance_id)
      .def_readonly("duration_s", &UtteranceAlignment::duration_s)
      .def_readonly("phones", &UtteranceAlignment::phones)
      .def_readonly("words", &UtteranceAlignment::words);
  m.def("load_alignment", &load_alignment, py::arg("path"));
  m.def(
      "validate",
      [](const UtteranceAlignment& a, const AudioBuffer& audio) {
        std::vector<std::string> out;
        for (const auto& f : validate(a, audio)) {
          out.push_back(f.message);
        }
        return out;
      },
      py::arg("alignment"), py::arg("audio"));

  py::enum_<Unit>(m, "Unit").value("WORD", Unit::Word).value("PHONE", Unit::Phone);
  py::enum_<SegmentKind>(m, "SegmentKind").value("LABELED", SegmentKind::Labeled).value("GAP", SegmentKind::Gap);
  py::class_<Segment>(m, "Segment")
      .def_readonly("start_sample", &Segment::start_sample)
      .def_readonly("end_sample", &Segment::end_sample)
      .def_readonly("kind", &Segment::kind)
      .def_readonly("label", &Segment::label)
      .def("__len__", &Segment::length);
  py::class_<SegmentPlan>(m, "SegmentPlan")
      .def_readonly("utterance_id", &SegmentPlan::utterance_id)
      .def_readonly("total_samples", &SegmentPlan::total_samples)
      .def_readonly("segments", &SegmentPlan::segments)
      .def_readonly("order", &SegmentPlan::order)
      .def("to_tsv", &plan_to_tsv);
  m.def("partition", &partition, py::arg("alignment"), py::arg("unit"), py::arg("sample_rate_hz") = kDefaultSampleRate,
        py::arg("total_samples") = std::nullopt);
  m.def("shuffle", py::overload_cast<const SegmentPlan&, Seed>(&shuffle), py::arg("plan"), py::arg("seed"));
  m.def("random_span", &random_span, py::arg("plan"), py::arg("seed"));
  m.def("render", &render, py::arg("plan"), py::arg("audio"));

  py::class_<PhoneInventory>(m, "PhoneInventory")
      .def("__len__", &PhoneInventory::size)
      .def("to_json", &inventory_to_json)
      .def_static("from_json", &inventory_from_json)
      .def(
          "source",
          [](const PhoneInventory& inv, PhoneId id) -> py::object {
            const SoundSource& s = inv.at(id).source;
            if (const auto* tone = std::get_if<Tone>(&s)) {
              return py::float_(tone->freq_hz);
            }
            return py::str(std::string(to_string(std::get<NoiseColor>(s))));
          },
          "Noise color name, or tone frequency in Hz.");
  py::class_<Lexicon>(m, "Lexicon")
      .def_readonly("words", &Lexicon::words)
      .def("to_json", &lexicon_to_json)
      .def_static("from_json", &lexicon_from_json);
  py::class_<RenderParams>(m, "RenderParams")
      .def(py::init<>())
      .def_readwrite("phone_base_ms", &RenderParams::phone_base_ms)
      .def_readwrite("phone_jitter_ms", &RenderParams::phone_jitter_ms)
      .def_readwrite("word_unit_base_ms", &RenderParams::word_unit_base_ms)
      .def_readwrite("word_unit_jitter_ms", &RenderParams::word_unit_jitter_ms)
      .def_readwrite("volume_min", &RenderParams::volume_min)
      .def_readwrite("volume_max", &RenderParams::volume_max)
      .def_readwrite("sample_rate_hz", &RenderParams::sample_rate_hz);
  m.def("build_inventory", &build_inventory, py::arg("seed"));
  m.def(
      "build_lexicon",
      [](const PhoneInventory& inv, std::size_t vocab_size, std::pair<int, int> word_length, Seed seed) {
        return build_lexicon(inv, vocab_size, {word_length.first, word_length.second}, seed);
      },
      py::arg("inventory"), py::arg("vocab_size") = 10000, py::arg("word_length") = std::pair{2, 8}, py::arg("seed"));
  m.def(
      "sample_sentence",
      [](const Lexicon& lex, std::pair<int, int> length, Seed seed) {
        return sample_sentence(lex, {length.first, length.second}, seed);
      },
      py::arg("lexicon"), py::arg("sentence_length") = std::pair{5, 20}, py::arg("seed"));
  m.def(
      "render_utterance",
      [](const std::vector<WordId>& sentence, const Lexicon& lex, const PhoneInventory& inv, const RenderParams& params,
         Seed seed) { return render_utterance(sentence, lex, inv, params, seed); },
      py::arg("sentence"), py::arg("lexicon"), py::arg("inventory"), py::arg("params") = RenderParams{},
      py::arg("seed"));
  m.def("word_noise_sequence", &word_noise_sequence, py::arg("params"), py::arg("inventory"), py::arg("total_samples"),
        py::arg("seed"));
  m.def("white_noise", &white_noise, py::arg("total_samples"), py::arg("seed"), py::arg("volume") = 0.5,
        py::arg("sample_rate_hz") = kDefaultSampleRate);
  m.def(
      "noise",
      [](const std::string& color, std::size_t n, double peak, Seed seed, int rate) {
        for (NoiseColor c : kNoiseColors) {
          if (to_string(c) == color) {
            Rng rng(seed);
            return render_source(c, n, peak, rate, rng);
          }
        }
        throw Error(Errc::InvalidArgument, "unknown noise color \"" + color + "\"");
      },
      py::arg("color"), py::arg("num_samples"), py::arg("peak"), py::arg("seed"),
      py::arg("sample_rate_hz") = kDefaultSampleRate);

  m.def(
      "chunk_words",
      [](const std::string& id, const std::vector<std::string>& words, const std::string& span) {
        return chunk_words(id, words, ChunkSpan::parse(span)).chunks;
      },
      py::arg("utterance_id"), py::arg("words"), py::arg("span") = "6");
  m.def(
      "speaker_split",
      [](const std::vector<std::string>& ids, std::size_t n, Seed seed) { return speaker_split(ids, n, seed); },
      py::arg("utterance_ids"), py::arg("n_speakers"), py::arg("seed"));
  m.def(
      "lexicon_stats",
      [](const std::vector<std::string>& transcripts) {
        const LexiconStats s = lexicon_stats(transcripts);
        return std::pair{s.token_count, s.type_count};
      },
      py::arg("transcripts"), "Returns (token_count, type_count).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"speechfactor"};
        for (const auto& a : args) {
          argv.push_back(a.c_str());
        }
        py::gil_scoped_release release;
        return cli::run(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Runs the command-line tool in-process and returns its exit code.");
}
