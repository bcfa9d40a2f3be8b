// src/corpus.cc

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

#include "halscope/corpus.h"

#include <fstream>
#include <unordered_set>

#include "halscope/errors.h"
#include "halscope/text.h"

namespace halscope {

Corpus::Corpus(std::string name, std::vector<Utterance> utterances)
    : name_(std::move(name)), utterances_(std::move(utterances)) {
  index_.reserve(utterances_.size());
  for (std::size_t i = 0; i < utterances_.size(); ++i) {
    const Utterance &u = utterances_[i];
    if (u.id.empty()) throw Error(Errc::kMalformedLine, "empty utterance id");
    if (!index_.emplace(u.id, i).second) throw Error(Errc::kDuplicateId, u.id);
  }
}

double Corpus::TotalHours() const {
  double seconds = 0.0;
  for (const Utterance &u : utterances_) seconds += u.duration_s.value_or(0.0);
  return seconds / 3600.0;
}

const Utterance *Corpus::Find(const std::string &id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &utterances_[it->second];
}

Corpus LoadManifest(const std::filesystem::path &path,
                    const ManifestOptions &options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kMissingFile, path.string());
  const std::filesystem::path base = path.parent_path();

  std::vector<Utterance> utterances;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos || t1 == 0 || t2 == t1 + 1)
      throw Error(Errc::kMalformedLine,
                  "line " + std::to_string(line_no) + " of " + path.string());
    Utterance u;
    u.id = line.substr(0, t1);
    u.audio_path = line.substr(t1 + 1, t2 - t1 - 1);
    std::string text = line.substr(t2 + 1);
    u.reference = options.normalize ? NormalizeText(text) : text;
    if (options.resolve_relative_paths) {
      std::filesystem::path p(u.audio_path);
      if (p.is_relative() && !base.empty())
        u.audio_path = (base / p).lexically_normal().string();
    }
    if (!seen.insert(u.id).second) throw Error(Errc::kDuplicateId, u.id);
    if (options.probe_audio) {
      WavInfo info = ProbeWav(u.audio_path);
      u.duration_s = static_cast<double>(info.frames) / info.sample_rate;
    }
    utterances.push_back(std::move(u));
  }
  return Corpus(path.stem().string(), std::move(utterances));
}

void WriteManifest(const std::filesystem::path &path, const Corpus &corpus) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  for (const Utterance &u : corpus.utterances())
    out << u.id << '\t' << u.audio_path << '\t' << u.reference << '\n';
  if (!out) throw Error(Errc::kIoError, "short write to " + path.string());
}

AudioSource FileAudioSource() {
  return [](const Utterance &u) { return LoadAudio(u.audio_path); };
}

std::string ValidationIssue::ToString() const {
  std::string name;
  switch (kind) {
    case IssueKind::kEmptyReference: name = "EmptyReference"; break;
    case IssueKind::kUnreadableAudio: name = "UnreadableAudio"; break;
    case IssueKind::kAmplitudeOutOfRange: name = "AmplitudeOutOfRange"; break;
    case IssueKind::kSampleRateMismatch: name = "SampleRateMismatch"; break;
  }
  return name + "(" + id + ")";
}

ValidationReport ValidateCorpus(const Corpus &corpus,
                                const ValidationOptions &options,
                                const AudioSource &audio) {
  ValidationReport report;
  for (const Utterance &u : corpus.utterances()) {
    if (Tokenize(u.reference).empty())
      report.issues.push_back({IssueKind::kEmptyReference, u.id, ""});
    if (!options.check_audio) continue;
    Waveform w;
    try {
      w = audio(u);
    } catch (const std::exception &e) {
      report.issues.push_back({IssueKind::kUnreadableAudio, u.id, e.what()});
      continue;
    }
    if (!w.InRange())
      report.issues.push_back({IssueKind::kAmplitudeOutOfRange, u.id, ""});
    if (options.expected_sample_rate &&
        w.sample_rate != *options.expected_sample_rate)
      report.issues.push_back({IssueKind::kSampleRateMismatch, u.id,
                               std::to_string(w.sample_rate)});
  }
  return report;
}

}  // namespace halscope
