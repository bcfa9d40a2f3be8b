// python/halscope_ext.cc

// Copyright 2026 The halscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the core operations.

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halscope/alignment.h"
#include "halscope/cli.h"
#include "halscope/errors.h"
#include "halscope/language_model.h"
#include "halscope/mt_metrics.h"
#include "halscope/perturb.h"
#include "halscope/taxonomy.h"
#include "halscope/text.h"

namespace py = pybind11;

namespace halscope {
namespace {

using Tokens = std::vector<std::string>;

py::dict AlignToDict(const Tokens &ref, const Tokens &hyp) {
  Alignment a = Align(ref, hyp);
  py::dict d;
  d["substitutions"] = a.substitutions;
  d["insertions"] = a.insertions;
  d["deletions"] = a.deletions;
  d["ref_len"] = a.ref_len;
  d["wer"] = WordErrorRate(a);
  return d;
}

NoiseSpec MakeSpec(const std::string &placement, double amplitude, double duration_s,
                   const std::string &mode, std::uint64_t seed) {
  NoiseSpec spec = ParsePlacement(placement) == NoisePlacement::kBegin
                       ? NoiseSpec::Begin(amplitude, duration_s, ParseMode(mode), seed)
                       : NoiseSpec::Whole(amplitude, ParseMode(mode), seed);
  spec.Validate();
  return spec;
}

py::array_t<float> PerturbArray(py::array_t<float, py::array::c_style | py::array::forcecast> x,
                                int sample_rate, const NoiseSpec &spec) {
  if (x.ndim() != 1) throw Error(Errc::kInvalidConfig, "expected a 1-D waveform");
  Waveform w;
  w.sample_rate = sample_rate;
  auto view = x.unchecked<1>();
  w.samples.resize(static_cast<std::size_t>(view.shape(0)));
  for (py::ssize_t i = 0; i < view.shape(0); ++i) w.samples[i] = view(i);
  Waveform out;
  {
    py::gil_scoped_release release;
    out = Perturb(w, spec);
  }
  return py::array_t<float>(static_cast<py::ssize_t>(out.samples.size()), out.samples.data());
}

}  // namespace
}  // namespace halscope

PYBIND11_MODULE(_halscope, m) {
  using namespace halscope;
  m.doc() = "Hallucination analysis for speech recognition.";

  static py::exception<Error> error(m, "HalscopeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(ErrcName(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("normalize_text", &NormalizeText, py::arg("text"));
  m.def("tokenize", [](const std::string &t) { return Tokenize(t); }, py::arg("text"));

  m.def("align", &AlignToDict, py::arg("ref"), py::arg("hyp"),
        "Word alignment counts and WER for token lists.");
  m.def(
      "wer",
      [](const std::string &ref, const std::string &hyp) {
        return WordErrorRate(Align(Tokenize(NormalizeText(ref)), Tokenize(NormalizeText(hyp))));
      },
      py::arg("ref"), py::arg("hyp"), "WER in percent of normalized texts.");

  m.def("sentence_bleu", &SentenceBleu, py::arg("ref"), py::arg("hyp"));
  m.def("sentence_chrf", &SentenceChrf2, py::arg("ref"), py::arg("hyp"));
  m.def("rouge1", &Rouge1, py::arg("ref"), py::arg("hyp"));

  py::class_<PerplexityProvider>(m, "LanguageModel")
      .def(
          "perplexity",
          [](const PerplexityProvider &lm, const std::string &text) {
            return Perplexity(Tokenize(NormalizeText(text)), lm);
          },
          py::arg("text"));
  py::class_<UniformLanguageModel, PerplexityProvider>(m, "UniformLanguageModel")
      .def(py::init<std::size_t>(), py::arg("vocab_size"));
  py::class_<NgramLanguageModel, PerplexityProvider>(m, "NgramLanguageModel")
      .def_static(
          "train",
          [](const std::vector<std::string> &texts, int order, double k, int unk_min_count) {
            std::vector<Tokens> tokens;
            tokens.reserve(texts.size());
            for (const auto &t : texts) tokens.push_back(Tokenize(NormalizeText(t)));
            return NgramLanguageModel::Train(tokens, order, SmoothingConfig{k, unk_min_count});
          },
          py::arg("texts"), py::arg("order") = 2, py::arg("k") = 0.1,
          py::arg("unk_min_count") = 2);

  m.def(
      "classify",
      [](double wer, double cos, double ppl, bool oscillating, double t_wer, double t_cos,
         double t_ppl) {
        Thresholds t{t_wer, t_cos, t_ppl};
        t.Validate();
        return std::string(ErrorClassName(Classify(wer, cos, ppl, oscillating, t)));
      },
      py::arg("wer"), py::arg("cos"), py::arg("ppl"), py::arg("oscillating") = false,
      py::arg("t_wer") = 30.0, py::arg("t_cos") = 0.2, py::arg("t_ppl") = 200.0);
  m.def(
      "detect_oscillation",
      [](const std::string &hyp) -> py::object {
        OscillationMatch o = DetectOscillation(Tokenize(NormalizeText(hyp)));
        if (!o.found) return py::none();
        py::dict d;
        d["ngram"] = o.ngram;
        d["start"] = o.start;
        d["repeats"] = o.repeats;
        return d;
      },
      py::arg("hypothesis"));

  m.def(
      "perturb",
      [](py::array_t<float, py::array::c_style | py::array::forcecast> x, int sample_rate,
         const std::string &placement, double amplitude, double duration_s,
         const std::string &mode, std::uint64_t seed) {
        return PerturbArray(x, sample_rate, MakeSpec(placement, amplitude, duration_s, mode, seed));
      },
      py::arg("samples"), py::arg("sample_rate") = 16000, py::arg("placement") = "begin",
      py::arg("amplitude") = 0.5, py::arg("duration_s") = 1.0, py::arg("mode") = "add",
      py::arg("seed") = 0, "Injects uniform noise into a float32 waveform.");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "halscope");
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = RunCli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI subcommand; returns (exit_code, stdout, stderr).");
}
