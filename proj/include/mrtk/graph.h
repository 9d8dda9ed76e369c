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

// In-memory model of a meaning-representation graph.
//
// A graph holds the tokens of one sentence (or document), a set of concepts
// (nodes) optionally aligned to token indices, and labeled relations between
// them. Relations flagged as `referent` are re-entrancies; the remaining
// relations form a forest, so a graph can have several roots while it is
// being built.
//
// Graph is plain data. The free functions below are the checked mutation
// API; code that writes fields directly (loaders, tests) is expected to call
// Validate() afterwards.

#ifndef MRTK_GRAPH_H_
#define MRTK_GRAPH_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrtk/ordered_map.h"

namespace mrtk {

// Unrecognized key/value pairs kept from an input file. Values are JSON text.
using Extras = std::vector<std::pair<std::string, std::string>>;

struct Concept {
  std::string id;  // "c<n>"
  std::string name;
  std::vector<int> token_ids;  // strictly ascending
  bool attribute = false;      // constant leaf: number, string, polarity, ...
  int first_token_id = -1;     // min(token_ids), -1 when unaligned
  Extras extras;

  bool operator==(const Concept &) const = default;
};

struct Relation {
  std::string id;  // "r<n>"
  std::string parent_id;
  std::string child_id;
  std::string label;  // no leading colon; inverse relations end in "-of"
  bool referent = false;
  Extras extras;

  bool operator==(const Relation &) const = default;
};

struct Graph {
  std::string tid;
  std::string annotator;
  std::string last_saved;  // "MM/DD/YYYY HH:MM:SS" or empty
  std::vector<std::string> tokens;
  OrderedMap<Concept> concepts;
  OrderedMap<Relation> relations;
  std::vector<int> covered_token_ids;
  int next_concept_id = 0;   // serialized as "_concept_id"
  int next_relation_id = 0;  // serialized as "_relation_id"
  // Penman "# ::key value" lines without a dedicated field, in input order.
  std::vector<std::pair<std::string, std::string>> metadata;
  Extras extras;

  bool operator==(const Graph &) const = default;
};

struct Batch {
  std::string source_name;
  std::vector<Graph> graphs;
  Extras extras;

  bool operator==(const Batch &) const = default;
};

// Creates an empty graph.
Graph NewGraph(std::string tid, std::string annotator,
               std::vector<std::string> tokens);

// Adds a concept (or an attribute constant when `attribute` is true) and
// returns its id. Token ids are sorted and deduplicated. Throws
// InvalidArgumentError for an empty name and RangeError for a token id
// outside the sentence.
std::string AddConcept(Graph &g, const std::string &name,
                       std::vector<int> token_ids, bool attribute = false);

struct AddedRelation {
  std::string id;
  bool referent;       // effective flag stored on the relation
  bool auto_referent;  // true when the flag was forced on
};

// Adds a relation parent -> child. The stored label gets a "-of" suffix when
// `inverse` is set. The referent flag is forced on when the child already
// has a non-referent parent, or when a non-referent edge would close a
// cycle. Throws NotFoundError for missing endpoints and InvariantError for
// self-loops, attribute parents and re-entrant attribute children.
AddedRelation AddRelation(Graph &g, const std::string &parent_id,
                          const std::string &child_id,
                          const std::string &label,
                          bool referent_requested = false,
                          bool inverse = false);

void UpdateConcept(Graph &g, const std::string &id,
                   const std::string &new_name);
void UpdateRelation(Graph &g, const std::string &id,
                    const std::string &new_label);

// Removes the concept and every relation touching it. A node that loses its
// non-referent parent this way gets its lowest-numbered referent in-edge
// promoted to a non-referent edge, unless that edge would close a cycle.
void DeleteConcept(Graph &g, const std::string &id);

// Removes one relation. No promotion takes place.
void DeleteRelation(Graph &g, const std::string &id);

void Align(Graph &g, const std::string &concept_id,
           const std::vector<int> &token_ids);
void Unalign(Graph &g, const std::string &concept_id,
             const std::vector<int> &token_ids);

struct Child {
  std::string relation_id;
  std::string concept_id;

  bool operator==(const Child &) const = default;
};

// Outgoing relations of `parent_id`, ordered by the child's first aligned
// token (unaligned children last), ties by relation number.
std::vector<Child> OrderedChildren(const Graph &g,
                                   const std::string &parent_id);

// Concepts without a non-referent parent, in creation order. Attribute
// constants attached to a parent are never roots.
std::vector<std::string> Roots(const Graph &g);

enum class ViolationKind {
  kIdFormat,         // c<n>/r<n> pattern broken
  kCounter,          // id number >= counter
  kEmptyName,
  kLabel,            // empty or colon-prefixed label
  kTokenRange,
  kTokenOrder,
  kFirstToken,
  kCoverage,
  kEndpoint,         // relation endpoint missing
  kSelfLoop,
  kAttributeParent,  // attribute with outgoing relations
  kAttributeReferent,
  kForest,           // more than one non-referent parent
  kCycle,            // cycle among non-referent relations
};

const char *ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::string> ids;
  std::string message;

  bool operator==(const Violation &) const = default;
};

// Every invariant violation of the graph; empty for a valid graph.
std::vector<Violation> Validate(const Graph &g);

// Throws InvariantError listing all violations, if any.
void CheckValid(const Graph &g);

// Numeric part of "c12" / "r3"; nullopt if the id does not have that shape.
std::optional<int> IdNumber(const std::string &id, char prefix);

// Recomputes derived fields (first_token_id, covered_token_ids).
void RecomputeCoverage(Graph &g);

}  // namespace mrtk

#endif  // MRTK_GRAPH_H_
