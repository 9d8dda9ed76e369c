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

#ifndef MRTK_TESTS_TEST_UTIL_H_
#define MRTK_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <random>
#include <string>

#include "mrtk/graph.h"
#include "mrtk/smatch.h"

namespace mrtk::testing {

std::filesystem::path DataDir();
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, const std::string &text);

// Fresh empty directory under the system temp dir.
std::filesystem::path MakeTempDir(const std::string &prefix);

// "The boy wants the girl to believe him" built the way an annotator would:
// concepts want-01, boy, girl, believe-01, then the four relations.
Graph DemoGraph();

const char *DemoSentence();

struct GeneratorOptions {
  int max_concepts = 12;
  int max_tokens = 14;
  bool allow_deletes = true;
};

// Random valid graph built only through the checked graph API. Covers
// re-entrancies, inverse roles, attributes, unaligned nodes, several roots
// and promotion on delete.
Graph RandomGraph(std::mt19937_64 &rng, const std::string &tid,
                  const GeneratorOptions &options = {});

// Structural equality up to renumbering of concept and relation ids:
// concepts matched by (name, token_ids, attribute), relations by endpoints,
// label and referent flag.
bool EqualUpToIds(const Graph &a, const Graph &b, std::string *why = nullptr);

}  // namespace mrtk::testing

#endif  // MRTK_TESTS_TEST_UTIL_H_
