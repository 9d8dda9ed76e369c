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

// Penman notation reader and writer.
//
// Alignments are written as a "~" suffix on concept names and constants,
// listing 0-based token indices separated by commas:
//
//   # ::id demo.1
//   # ::snt The boy wants the girl to believe him
//   (w / want-01~2
//      :ARG0 (b / boy~1,7)
//      :ARG1 (b2 / believe-01~6
//               :ARG1 b
//               :ARG0 (g / girl~4)))
//
// Tokens are the whitespace-separated words of the "# ::snt" line. The
// reader also accepts "~e.N" alignments; the writer never produces them.
//
// A graph with several roots is written under a synthetic
// "(m / multi-sentence :snt1 ... :snt2 ...)" node and flagged with a
// "# ::roots N" metadata line; the reader removes the wrapper again.

#ifndef MRTK_PENMAN_H_
#define MRTK_PENMAN_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mrtk/graph.h"

namespace mrtk {

struct PenmanOutput {
  std::string text;
  // Penman variable assigned to each non-attribute concept (and to attribute
  // constants that have no parent, which are written as nodes).
  std::map<std::string, std::string> variables;
};

// Serializes one graph, metadata lines included. Throws InvariantError if
// the graph is invalid and InvalidArgumentError if a concept name or label
// cannot be written as a Penman symbol.
PenmanOutput SerializePenmanWithVariables(const Graph &g);
std::string SerializePenman(const Graph &g);

// Serializes a batch: one block per graph, separated by blank lines.
std::string SerializePenman(const Batch &batch);

struct PenmanParse {
  Batch batch;
  // Per graph, the Penman variable of each concept introduced by one.
  std::vector<std::map<std::string, std::string>> variables;
  std::vector<std::string> warnings;
};

// Parses one or more Penman blocks. Graphs without "# ::id" get the tid
// "<source_name>.<k>" (k 1-based). Throws ParseError with the position of
// the first syntax problem.
PenmanParse ParsePenmanDetailed(std::string_view text,
                                const std::string &source_name = "");
Batch ParsePenman(std::string_view text, const std::string &source_name = "",
                  std::vector<std::string> *warnings = nullptr);

// True if `name` can be written as a concept or constant without quoting.
bool IsPenmanSymbol(std::string_view name);

}  // namespace mrtk

#endif  // MRTK_PENMAN_H_
