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

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include "mrtk/smatch.h"

namespace mrtk {

namespace {

// Roles that end in "-of" without being inverses.
const std::set<std::string> kNonInverseOf = {"consist-of", "prep-out-of",
                                             "prep-on-behalf-of"};

bool IsInverse(const std::string &label) {
  return label.size() > 3 && label.ends_with("-of") &&
         kNonInverseOf.count(label) == 0;
}

std::vector<std::tuple<int, std::string, std::string, std::string>> Keys(
    const TripleSet &t) {
  std::vector<std::tuple<int, std::string, std::string, std::string>> keys;
  for (const auto *group : {&t.instances, &t.attributes, &t.edges}) {
    for (const Triple &x : *group) {
      keys.emplace_back(static_cast<int>(x.kind), x.source, x.label, x.target);
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

std::vector<std::string> TripleSet::Variables() const {
  std::vector<std::string> vars;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string &v) {
    if (seen.insert(v).second) vars.push_back(v);
  };
  for (const Triple &t : instances) add(t.source);
  for (const Triple &t : attributes) add(t.source);
  for (const Triple &t : edges) {
    add(t.source);
    add(t.target);
  }
  return vars;
}

TripleSet Triples(const Graph &g) {
  TripleSet out;
  std::unordered_set<std::string> attached_attributes;
  for (const Relation &r : g.relations) {
    const Concept *child = g.concepts.find(r.child_id);
    if (child != nullptr && child->attribute) {
      attached_attributes.insert(child->id);
    }
  }
  // Attributes without a parent behave as nodes.
  for (const Concept &c : g.concepts) {
    if (c.attribute && attached_attributes.count(c.id) > 0) continue;
    out.instances.push_back({TripleKind::kInstance, c.id, "instance", c.name});
  }
  for (const std::string &root : Roots(g)) {
    out.attributes.push_back(
        {TripleKind::kAttribute, root, kTopLabel, g.concepts.find(root)->name});
  }
  for (const Relation &r : g.relations) {
    const Concept &child = *g.concepts.find(r.child_id);
    if (child.attribute) {
      out.attributes.push_back(
          {TripleKind::kAttribute, r.parent_id, r.label, child.name});
    } else if (IsInverse(r.label)) {
      out.edges.push_back({TripleKind::kEdge, r.child_id,
                           r.label.substr(0, r.label.size() - 3), r.parent_id,
                           r.referent});
    } else {
      out.edges.push_back(
          {TripleKind::kEdge, r.parent_id, r.label, r.child_id, r.referent});
    }
  }
  return out;
}

TripleSet RenameVariables(const TripleSet &t,
                          const std::map<std::string, std::string> &names) {
  auto rename = [&](const std::string &v) {
    auto it = names.find(v);
    return it == names.end() ? v : it->second;
  };
  TripleSet out = t;
  for (auto *group : {&out.instances, &out.attributes, &out.edges}) {
    for (Triple &x : *group) x.source = rename(x.source);
  }
  for (Triple &x : out.edges) x.target = rename(x.target);
  return out;
}

bool SameTriples(const TripleSet &a, const TripleSet &b) {
  return Keys(a) == Keys(b);
}

}  // namespace mrtk
