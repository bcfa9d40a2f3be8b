// include/halscope/cli.h

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


#ifndef HALSCOPE_CLI_H_
#define HALSCOPE_CLI_H_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "halscope/backend.h"
#include "halscope/corpus.h"
#include "halscope/language_model.h"

namespace halscope {

/// Exit codes of RunCli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRunError = 1;
inline constexpr int kExitUsage = 2;

/// |args| includes the program name. Machine output goes to |out|,
/// diagnostics to |err|.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

/// "sim:<config.yaml>", "exec:<command>" or "tcp:<host:port>". Simulated
/// handles read spoken text from |corpus|.
BackendFactory MakeBackendFactory(const std::string &spec, const Corpus &corpus);

/// "builtin:<order>,<k>" trains an n-gram model on |training_texts|;
/// "exec:<command>" and "tcp:<host:port>" use an external service.
std::shared_ptr<const PerplexityProvider> MakeLanguageModel(
    const std::string &spec,
    const std::vector<std::vector<std::string>> &training_texts);

/// Flattens a YAML mapping into "--key value" tokens. Nested keys join with
/// '-', except that the "thresholds" section maps to the "t" prefix.
/// Sequences repeat the flag; true booleans become bare flags.
std::vector<std::string> ConfigToArgs(const std::string &yaml_path);

}  // namespace halscope

#endif  // HALSCOPE_CLI_H_
