// Copyright 2026 The mrtk Authors.
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

// The mrtk command line: annotate, json-to-penman, penman-to-json, eval.
//
// Exit codes: 0 success, 1 some inputs failed (conversion or evaluation
// errors), 2 usage errors and unreadable inputs.

#ifndef MRTK_CLI_H_
#define MRTK_CLI_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mrtk/smatch.h"

namespace mrtk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailures = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line. args[0] is the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

struct ConvertStats {
  int converted = 0;
  int failed = 0;
};

// Converts every *.json under in (a directory or one file) to *.penman.
// Outputs mirror the input tree under out, which defaults to in (next to
// each input). Failures are reported on err and skipped.
int JsonToPenmanCommand(const std::filesystem::path &in,
                        const std::optional<std::filesystem::path> &out,
                        std::ostream &err, ConvertStats *stats = nullptr);
// The same for *.penman to *.json.
int PenmanToJsonCommand(const std::filesystem::path &in,
                        const std::optional<std::filesystem::path> &out,
                        std::ostream &err, ConvertStats *stats = nullptr);

enum class InputFormat { kAuto, kJson, kPenman };

// Reads a batch from .json or .penman, by extension unless forced.
Batch ReadBatchFile(const std::filesystem::path &path,
                    InputFormat format = InputFormat::kAuto);

struct EvalCommandOptions {
  std::filesystem::path gold;
  std::filesystem::path predicted;
  InputFormat format = InputFormat::kAuto;
  bool breakdown = false;                // all built-in categories
  std::vector<std::string> categories;  // extra categories
  int restarts = kDefaultRestarts;
  uint64_t seed = 0;
  bool json_report = false;
};

int EvalCommand(const EvalCommandOptions &options, std::ostream &out,
                std::ostream &err);

// Machine-readable evaluation report; the schema is in docs/eval-report.md.
std::string EvalReportJson(const EvalCommandOptions &options,
                           const CorpusScore &score);
std::string EvalReportText(const CorpusScore &score);

}  // namespace mrtk

#endif  // MRTK_CLI_H_
