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

// Annotation JSON files and plain-text batches. See docs/json-format.md for
// the schema. The writer output is byte-stable: writing a batch read from a
// file this writer produced reproduces the file exactly.

#ifndef MRTK_ANNOTATION_JSON_H_
#define MRTK_ANNOTATION_JSON_H_

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>

#include "mrtk/graph.h"
#include "nlohmann/json.hpp"

namespace mrtk {

using ordered_json = nlohmann::ordered_json;

// One graph per nonblank line; tokens are the whitespace-separated words and
// tids are "<base>.<k>" with k counting nonblank lines from 1. `name` may be
// a file name ("demo.txt") or a base name. LF and CRLF are accepted.
Batch ReadPlainText(const std::string &name, std::string_view text,
                    const std::string &annotator);

// Validates every graph and renders the batch. Throws InvariantError.
std::string WriteJson(const Batch &batch);

// Parses and validates. Throws SchemaError for structural problems and
// InvariantError for graphs that violate graph invariants.
Batch ReadJson(std::string_view text, const std::string &source_name = "");

// Graph <-> JSON object, as stored inside "graphs". GraphFromJson does not
// validate; `path` prefixes schema error messages.
ordered_json GraphToJson(const Graph &g);
Graph GraphFromJson(const ordered_json &value, const std::string &path);

// Pretty printer used by WriteJson: objects one key per line with two-space
// indentation, arrays of scalars on a single line.
std::string FormatJson(const ordered_json &value);

// "MM/DD/YYYY HH:MM:SS" in local time.
std::string FormatTimestamp(std::chrono::system_clock::time_point t);

// "<base>.<annotator>.json" next to `source`. A source that already is the
// annotator's claim file maps to itself.
std::filesystem::path ClaimFileName(const std::filesystem::path &source,
                                    const std::string &annotator);

// Base name used for tids: file name without directory and extension.
std::string BaseName(const std::string &name);

}  // namespace mrtk

#endif  // MRTK_ANNOTATION_JSON_H_
