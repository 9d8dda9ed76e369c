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

#include "mrtk/graph.h"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mrtk/errors.h"

namespace mrtk {

namespace {

Concept &GetConcept(Graph &g, const std::string &id) {
  Concept *c = g.concepts.find(id);
  if (c == nullptr) throw NotFoundError("no concept " + id);
  return *c;
}

Relation &GetRelation(Graph &g, const std::string &id) {
  Relation *r = g.relations.find(id);
  if (r == nullptr) throw NotFoundError("no relation " + id);
  return *r;
}

void CheckTokenIds(const Graph &g, const std::vector<int> &token_ids) {
  for (int t : token_ids) {
    if (t < 0 || t >= static_cast<int>(g.tokens.size())) {
      throw RangeError("token id " + std::to_string(t) + " out of range [0, " +
                       std::to_string(g.tokens.size()) + ")");
    }
  }
}

void CheckLabel(const std::string &label) {
  if (label.empty()) throw InvalidArgumentError("empty relation label");
  if (label[0] == ':') {
    throw InvalidArgumentError("relation label must not start with ':'");
  }
}

// Non-referent parent relation of each concept (first one found).
std::unordered_map<std::string, const Relation *> TreeParents(const Graph &g) {
  std::unordered_map<std::string, const Relation *> parents;
  for (const Relation &r : g.relations) {
    if (!r.referent) parents.emplace(r.child_id, &r);
  }
  return parents;
}

// True if `ancestor` lies on the non-referent path from `node` to its root.
bool IsTreeAncestor(const Graph &g, const std::string &ancestor,
                    const std::string &node) {
  auto parents = TreeParents(g);
  std::string current = node;
  for (size_t steps = 0; steps <= g.concepts.size(); ++steps) {
    if (current == ancestor) return true;
    auto it = parents.find(current);
    if (it == parents.end()) return false;
    current = it->second->parent_id;
  }
  return false;
}

int RelationOrder(const Graph &g, const Relation &r) {
  auto n = IdNumber(r.id, 'r');
  return n ? *n : g.next_relation_id + g.relations.position(r.id);
}

}  // namespace

std::optional<int> IdNumber(const std::string &id, char prefix) {
  if (id.size() < 2 || id[0] != prefix) return std::nullopt;
  if (id.size() > 2 && id[1] == '0') return std::nullopt;
  if (id.size() > 10) return std::nullopt;
  long value = 0;
  for (size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return std::nullopt;
    value = value * 10 + (id[i] - '0');
  }
  if (value > INT_MAX) return std::nullopt;
  return static_cast<int>(value);
}

void RecomputeCoverage(Graph &g) {
  std::set<int> covered;
  for (Concept &c : g.concepts) {
    c.first_token_id = c.token_ids.empty() ? -1 : c.token_ids.front();
    covered.insert(c.token_ids.begin(), c.token_ids.end());
  }
  g.covered_token_ids.assign(covered.begin(), covered.end());
}

Graph NewGraph(std::string tid, std::string annotator,
               std::vector<std::string> tokens) {
  Graph g;
  g.tid = std::move(tid);
  g.annotator = std::move(annotator);
  g.tokens = std::move(tokens);
  return g;
}

std::string AddConcept(Graph &g, const std::string &name,
                       std::vector<int> token_ids, bool attribute) {
  if (name.empty()) throw InvalidArgumentError("empty concept name");
  CheckTokenIds(g, token_ids);
  std::sort(token_ids.begin(), token_ids.end());
  token_ids.erase(std::unique(token_ids.begin(), token_ids.end()),
                  token_ids.end());

  Concept c;
  c.id = "c" + std::to_string(g.next_concept_id);
  c.name = name;
  c.token_ids = std::move(token_ids);
  c.attribute = attribute;
  if (!g.concepts.insert(c)) {
    throw InvariantError("concept id " + c.id + " already in use");
  }
  ++g.next_concept_id;
  RecomputeCoverage(g);
  return c.id;
}

AddedRelation AddRelation(Graph &g, const std::string &parent_id,
                          const std::string &child_id,
                          const std::string &label, bool referent_requested,
                          bool inverse) {
  CheckLabel(label);
  const Concept &parent = GetConcept(g, parent_id);
  const Concept &child = GetConcept(g, child_id);
  if (parent_id == child_id) {
    throw InvariantError("relation from " + parent_id + " to itself");
  }
  if (parent.attribute) {
    throw InvariantError("attribute " + parent_id + " cannot have relations");
  }

  bool has_tree_parent = false;
  for (const Relation &r : g.relations) {
    if (r.child_id == child_id && !r.referent) has_tree_parent = true;
  }
  // A non-referent edge from a descendant back to its ancestor would turn
  // the forest into a cycle; such an edge can only be a re-entrancy.
  bool closes_cycle = IsTreeAncestor(g, child_id, parent_id);
  bool referent = referent_requested || has_tree_parent || closes_cycle;
  if (child.attribute && referent) {
    throw InvariantError("attribute " + child_id +
                         " cannot be the target of a referent relation");
  }

  Relation r;
  r.id = "r" + std::to_string(g.next_relation_id);
  r.parent_id = parent_id;
  r.child_id = child_id;
  r.label = inverse ? label + "-of" : label;
  r.referent = referent;
  if (!g.relations.insert(r)) {
    throw InvariantError("relation id " + r.id + " already in use");
  }
  ++g.next_relation_id;
  return {r.id, referent, referent && !referent_requested};
}

void UpdateConcept(Graph &g, const std::string &id,
                   const std::string &new_name) {
  Concept &c = GetConcept(g, id);
  if (new_name.empty()) throw InvalidArgumentError("empty concept name");
  c.name = new_name;
}

void UpdateRelation(Graph &g, const std::string &id,
                    const std::string &new_label) {
  Relation &r = GetRelation(g, id);
  CheckLabel(new_label);
  r.label = new_label;
}

void DeleteConcept(Graph &g, const std::string &id) {
  GetConcept(g, id);
  std::vector<std::string> orphaned;
  for (const Relation &r : g.relations) {
    if (r.parent_id == id && !r.referent && r.child_id != id) {
      orphaned.push_back(r.child_id);
    }
  }
  g.relations.erase_if([&](const Relation &r) {
    return r.parent_id == id || r.child_id == id;
  });
  g.concepts.erase(id);

  for (const std::string &child : orphaned) {
    std::vector<Relation *> candidates;
    for (Relation &r : g.relations) {
      if (r.child_id == child && r.referent) candidates.push_back(&r);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](const Relation *a, const Relation *b) {
                return RelationOrder(g, *a) < RelationOrder(g, *b);
              });
    for (Relation *r : candidates) {
      if (!IsTreeAncestor(g, child, r->parent_id)) {
        r->referent = false;
        break;
      }
    }
  }
  RecomputeCoverage(g);
}

void DeleteRelation(Graph &g, const std::string &id) {
  GetRelation(g, id);
  g.relations.erase(id);
}

void Align(Graph &g, const std::string &concept_id,
           const std::vector<int> &token_ids) {
  Concept &c = GetConcept(g, concept_id);
  CheckTokenIds(g, token_ids);
  std::set<int> ids(c.token_ids.begin(), c.token_ids.end());
  ids.insert(token_ids.begin(), token_ids.end());
  c.token_ids.assign(ids.begin(), ids.end());
  RecomputeCoverage(g);
}

void Unalign(Graph &g, const std::string &concept_id,
             const std::vector<int> &token_ids) {
  Concept &c = GetConcept(g, concept_id);
  CheckTokenIds(g, token_ids);
  std::set<int> drop(token_ids.begin(), token_ids.end());
  std::erase_if(c.token_ids, [&](int t) { return drop.count(t) > 0; });
  RecomputeCoverage(g);
}

std::vector<Child> OrderedChildren(const Graph &g,
                                   const std::string &parent_id) {
  struct Keyed {
    int token;
    int order;
    Child child;
  };
  std::vector<Keyed> keyed;
  for (const Relation &r : g.relations) {
    if (r.parent_id != parent_id) continue;
    const Concept *c = g.concepts.find(r.child_id);
    int first = c == nullptr ? -1 : c->first_token_id;
    keyed.push_back({first < 0 ? INT_MAX : first, RelationOrder(g, r),
                     {r.id, r.child_id}});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    if (a.token != b.token) return a.token < b.token;
    return a.order < b.order;
  });
  std::vector<Child> children;
  children.reserve(keyed.size());
  for (Keyed &k : keyed) children.push_back(std::move(k.child));
  return children;
}

std::vector<std::string> Roots(const Graph &g) {
  std::unordered_map<std::string, int> tree_in, any_in;
  for (const Relation &r : g.relations) {
    ++any_in[r.child_id];
    if (!r.referent) ++tree_in[r.child_id];
  }
  std::vector<std::string> roots;
  for (const Concept &c : g.concepts) {
    if (tree_in.count(c.id) > 0) continue;
    if (c.attribute && any_in.count(c.id) > 0) continue;
    roots.push_back(c.id);
  }
  return roots;
}

const char *ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kIdFormat: return "ID_FORMAT";
    case ViolationKind::kCounter: return "COUNTER";
    case ViolationKind::kEmptyName: return "EMPTY_NAME";
    case ViolationKind::kLabel: return "LABEL";
    case ViolationKind::kTokenRange: return "TOKEN_RANGE";
    case ViolationKind::kTokenOrder: return "TOKEN_ORDER";
    case ViolationKind::kFirstToken: return "FIRST_TOKEN";
    case ViolationKind::kCoverage: return "COVERAGE";
    case ViolationKind::kEndpoint: return "ENDPOINT";
    case ViolationKind::kSelfLoop: return "SELF_LOOP";
    case ViolationKind::kAttributeParent: return "ATTRIBUTE_PARENT";
    case ViolationKind::kAttributeReferent: return "ATTRIBUTE_REFERENT";
    case ViolationKind::kForest: return "FOREST";
    case ViolationKind::kCycle: return "CYCLE";
  }
  return "UNKNOWN";
}

std::vector<Violation> Validate(const Graph &g) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind kind, std::vector<std::string> ids,
                 std::string message) {
    out.push_back({kind, std::move(ids), std::move(message)});
  };
  const int num_tokens = static_cast<int>(g.tokens.size());

  std::set<int> covered;
  for (const Concept &c : g.concepts) {
    auto n = IdNumber(c.id, 'c');
    if (!n) {
      add(ViolationKind::kIdFormat, {c.id}, "concept id is not c<n>");
    } else if (*n >= g.next_concept_id) {
      add(ViolationKind::kCounter, {c.id},
          "concept id not below _concept_id " +
              std::to_string(g.next_concept_id));
    }
    if (c.name.empty()) add(ViolationKind::kEmptyName, {c.id}, "empty name");
    bool ordered = true;
    for (size_t i = 0; i < c.token_ids.size(); ++i) {
      int t = c.token_ids[i];
      if (t < 0 || t >= num_tokens) {
        add(ViolationKind::kTokenRange, {c.id},
            "token id " + std::to_string(t) + " out of range");
      }
      if (i > 0 && c.token_ids[i - 1] >= t) ordered = false;
      covered.insert(t);
    }
    if (!ordered) {
      add(ViolationKind::kTokenOrder, {c.id},
          "token_ids not strictly ascending");
    }
    int expected_first = c.token_ids.empty()
                             ? -1
                             : *std::min_element(c.token_ids.begin(),
                                                 c.token_ids.end());
    if (c.first_token_id != expected_first) {
      add(ViolationKind::kFirstToken, {c.id},
          "first_token_id " + std::to_string(c.first_token_id) +
              ", expected " + std::to_string(expected_first));
    }
  }
  std::vector<int> expected_cover(covered.begin(), covered.end());
  if (g.covered_token_ids != expected_cover) {
    add(ViolationKind::kCoverage, {},
        "covered_token_ids differs from the union of concept token_ids");
  }

  std::map<std::string, std::vector<std::string>> tree_in;
  for (const Relation &r : g.relations) {
    auto n = IdNumber(r.id, 'r');
    if (!n) {
      add(ViolationKind::kIdFormat, {r.id}, "relation id is not r<n>");
    } else if (*n >= g.next_relation_id) {
      add(ViolationKind::kCounter, {r.id},
          "relation id not below _relation_id " +
              std::to_string(g.next_relation_id));
    }
    if (r.label.empty() || r.label[0] == ':') {
      add(ViolationKind::kLabel, {r.id}, "label empty or starts with ':'");
    }
    const Concept *parent = g.concepts.find(r.parent_id);
    const Concept *child = g.concepts.find(r.child_id);
    if (parent == nullptr || child == nullptr) {
      add(ViolationKind::kEndpoint, {r.id},
          "endpoint " + (parent == nullptr ? r.parent_id : r.child_id) +
              " does not exist");
      continue;
    }
    if (r.parent_id == r.child_id) {
      add(ViolationKind::kSelfLoop, {r.id, r.parent_id}, "self-loop");
      continue;
    }
    if (parent->attribute) {
      add(ViolationKind::kAttributeParent, {r.parent_id, r.id},
          "attribute has an outgoing relation");
    }
    if (child->attribute && r.referent) {
      add(ViolationKind::kAttributeReferent, {r.id, r.child_id},
          "referent relation into an attribute");
    }
    if (!r.referent) tree_in[r.child_id].push_back(r.id);
  }

  std::unordered_map<std::string, std::vector<std::string>> tree_children;
  for (const auto &[child, rels] : tree_in) {
    if (rels.size() > 1) {
      std::vector<std::string> ids{child};
      ids.insert(ids.end(), rels.begin(), rels.end());
      add(ViolationKind::kForest, ids,
          child + " has " + std::to_string(rels.size()) +
              " non-referent parents");
    }
    for (const std::string &rid : rels) {
      tree_children[g.relations.find(rid)->parent_id].push_back(child);
    }
  }

  // Cycle detection over non-referent edges (iterative DFS, three colors).
  std::unordered_map<std::string, int> color;
  for (const Concept &start : g.concepts) {
    if (color[start.id] != 0) continue;
    std::vector<std::pair<std::string, size_t>> stack{{start.id, 0}};
    color[start.id] = 1;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      const auto &kids = tree_children[node];
      if (next == kids.size()) {
        color[node] = 2;
        stack.pop_back();
        continue;
      }
      const std::string kid = kids[next++];
      if (color[kid] == 1) {
        std::vector<std::string> cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const auto &e) { return e.first == kid; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        add(ViolationKind::kCycle, cycle, "cycle among non-referent relations");
      } else if (color[kid] == 0) {
        color[kid] = 1;
        stack.emplace_back(kid, 0);
      }
    }
  }
  return out;
}

void CheckValid(const Graph &g) {
  auto violations = Validate(g);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "graph " << (g.tid.empty() ? "<no tid>" : g.tid) << " is invalid:";
  for (const Violation &v : violations) {
    msg << " [" << ViolationKindName(v.kind) << "] " << v.message;
    if (!v.ids.empty()) {
      msg << " (";
      for (size_t i = 0; i < v.ids.size(); ++i) {
        msg << (i ? ", " : "") << v.ids[i];
      }
      msg << ")";
    }
    msg << ";";
  }
  throw InvariantError(msg.str());
}

}  // namespace mrtk
