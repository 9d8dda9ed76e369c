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

// Triple-based graph comparison (Smatch).
//
// A graph is flattened into instance triples (var, instance, concept),
// attribute triples (var, role, constant) including one (var, TOP, concept)
// per root, and edge triples (var, role, var). Smatch is the F-score of the
// triples matched under the best injective mapping between the variables of
// two graphs. Smatch() searches for that mapping by greedy hill-climbing
// with restarts run in parallel; SmatchSerial() is the single-threaded
// reference and returns identical results. SmatchOracle() enumerates all
// mappings for small graphs.

#ifndef MRTK_SMATCH_H_
#define MRTK_SMATCH_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mrtk/graph.h"

namespace mrtk {

enum class TripleKind { kInstance, kAttribute, kEdge };

struct Triple {
  TripleKind kind;
  std::string source;  // variable
  std::string label;   // "instance", a role, or "TOP"
  std::string target;  // concept name, constant, or variable
  // Edges only: the relation was a re-entrancy. Not part of triple identity.
  bool referent = false;
};

struct TripleSet {
  std::vector<Triple> instances;
  std::vector<Triple> attributes;
  std::vector<Triple> edges;

  size_t size() const {
    return instances.size() + attributes.size() + edges.size();
  }
  // Distinct variables in first-appearance order.
  std::vector<std::string> Variables() const;
};

inline constexpr char kTopLabel[] = "TOP";

// Variables are concept ids. Inverse roles ("ARG0-of") are normalized to the
// forward direction; attribute children become attribute triples.
TripleSet Triples(const Graph &g);

// Renames variables (sources and edge targets); unknown names are kept.
TripleSet RenameVariables(const TripleSet &t,
                          const std::map<std::string, std::string> &names);

// Multiset equality of (kind, source, label, target).
bool SameTriples(const TripleSet &a, const TripleSet &b);

struct SmatchScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int matched = 0;
  int total_left = 0;
  int total_right = 0;
  std::map<std::string, std::string> mapping;  // left var -> right var

  bool operator==(const SmatchScore &) const = default;
};

// P = matched / total_left, R = matched / total_right. Two empty sides score
// 1.0 with zero totals.
SmatchScore MakeScore(int matched, int total_left, int total_right);

inline constexpr int kDefaultRestarts = 4;

// Hill-climbing search. Restart 0 starts from concept-name agreement; the
// others start from random mappings derived from (seed, restart index).
// The best restart wins, ties to the lowest index. Throws
// InvalidArgumentError when restarts < 1.
SmatchScore Smatch(const TripleSet &left, const TripleSet &right,
                   int restarts = kDefaultRestarts, uint64_t seed = 0);
SmatchScore SmatchSerial(const TripleSet &left, const TripleSet &right,
                         int restarts = kDefaultRestarts, uint64_t seed = 0);

inline constexpr int kOracleMaxVariables = 8;

// Exhaustive search over injective mappings. Requires the smaller side to
// have at most kOracleMaxVariables variables (InvalidArgumentError).
SmatchScore SmatchOracle(const TripleSet &left, const TripleSet &right);

// Number of left triples matched under a fixed mapping.
int MatchedUnder(const std::vector<Triple> &left,
                 const std::vector<Triple> &right,
                 const std::map<std::string, std::string> &mapping);

// ---------------------------------------------------------------------------
// Fine-grained breakdown.

struct Category {
  std::string name;
  std::function<bool(const Triple &)> select;
};

// instances, edges, core-roles (edge labels starting with "ARG"),
// attributes (TOP excluded), polarity, reentrancy, top.
std::vector<std::string> BuiltinCategoryNames();

// A built-in name, or "label:<prefix>" for edges whose role starts with
// <prefix>. Throws InvalidArgumentError for anything else.
Category ResolveCategory(const std::string &name);

struct CategoryScore {
  std::string category;
  SmatchScore score;
};

// Scores each category under the single best full-graph mapping.
std::vector<CategoryScore> Breakdown(const TripleSet &left,
                                     const TripleSet &right,
                                     const std::map<std::string, std::string>
                                         &mapping,
                                     const std::vector<Category> &categories);
std::vector<CategoryScore> Breakdown(const Graph &left, const Graph &right,
                                     const std::vector<std::string> &categories,
                                     int restarts = kDefaultRestarts,
                                     uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Corpus evaluation.

struct EvalOptions {
  int restarts = kDefaultRestarts;
  uint64_t seed = 0;
  std::vector<std::string> categories;  // empty: no breakdown
};

struct SentenceScore {
  std::string tid;
  SmatchScore score;
  std::vector<CategoryScore> categories;
};

struct CorpusScore {
  SmatchScore total;  // micro-averaged: matched and totals summed
  std::vector<SentenceScore> sentences;
  std::vector<CategoryScore> categories;
};

// Pairs graphs by tid (in gold order) and scores each pair with the
// prediction as the left side. Throws InvalidArgumentError listing the tids
// present on only one side. Pairs are scored in parallel.
CorpusScore EvaluateCorpus(const Batch &gold, const Batch &predicted,
                           const EvalOptions &options = {});
CorpusScore EvaluateCorpusSerial(const Batch &gold, const Batch &predicted,
                                 const EvalOptions &options = {});

}  // namespace mrtk

#endif  // MRTK_SMATCH_H_
