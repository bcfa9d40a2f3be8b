// include/halscope/corpus.h

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

#ifndef HALSCOPE_CORPUS_H_
#define HALSCOPE_CORPUS_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "halscope/audio.h"

namespace halscope {

struct Utterance {
  std::string id;
  std::string audio_path;
  std::string reference;
  /// Filled when the manifest is loaded with audio probing enabled.
  std::optional<double> duration_s;
};

/// Ordered collection of utterances with unique ids. Immutable once built.
class Corpus {
 public:
  Corpus() = default;
  /// Throws DuplicateId if two utterances share an id.
  Corpus(std::string name, std::vector<Utterance> utterances);

  const std::string &name() const { return name_; }
  const std::vector<Utterance> &utterances() const { return utterances_; }
  std::size_t size() const { return utterances_.size(); }
  bool empty() const { return utterances_.empty(); }
  const Utterance &operator[](std::size_t i) const { return utterances_[i]; }

  /// Sum of known durations, in hours.
  double TotalHours() const;

  const Utterance *Find(const std::string &id) const;

 private:
  std::string name_;
  std::vector<Utterance> utterances_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ManifestOptions {
  bool normalize = true;
  /// Read each WAV header to fill Utterance::duration_s.
  bool probe_audio = false;
  /// Relative audio paths are resolved against the manifest's directory.
  bool resolve_relative_paths = true;
};

/// Parses a TSV manifest: id<TAB>audio_path<TAB>transcript per line. Blank
/// lines are skipped. Errors: MissingFile, MalformedLine, DuplicateId.
Corpus LoadManifest(const std::filesystem::path &path,
                    const ManifestOptions &options = {});

void WriteManifest(const std::filesystem::path &path, const Corpus &corpus);

/// Maps an utterance to its audio. The default reads Utterance::audio_path.
using AudioSource = std::function<Waveform(const Utterance &)>;
AudioSource FileAudioSource();

enum class IssueKind {
  kEmptyReference,
  kUnreadableAudio,
  kAmplitudeOutOfRange,
  kSampleRateMismatch,
};

struct ValidationIssue {
  IssueKind kind;
  std::string id;
  std::string detail;

  /// "EmptyReference(u1)" style rendering.
  std::string ToString() const;
};

struct ValidationOptions {
  bool check_audio = true;
  std::optional<int> expected_sample_rate;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport ValidateCorpus(const Corpus &corpus,
                                const ValidationOptions &options = {},
                                const AudioSource &audio = FileAudioSource());

}  // namespace halscope

#endif  // HALSCOPE_CORPUS_H_
