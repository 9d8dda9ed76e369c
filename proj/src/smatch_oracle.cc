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

// Exhaustive Smatch. Shares nothing with the hill-climbing search beyond the
// TripleSet type: triples are compared as strings and counted off a
// multiset as variables get assigned.

#include <algorithm>
#include <unordered_map>

#include "mrtk/errors.h"
#include "mrtk/smatch.h"

namespace mrtk {

namespace {

std::vector<const Triple *> All(const TripleSet &t) {
  std::vector<const Triple *> out;
  for (const auto *group : {&t.instances, &t.attributes, &t.edges}) {
    for (const Triple &x : *group) out.push_back(&x);
  }
  return out;
}

std::string Key(const Triple &t, const std::string &source,
                const std::string &target) {
  return std::to_string(static_cast<int>(t.kind)) + '\x1f' + source + '\x1f' +
         t.label + '\x1f' + target;
}

class Enumerator {
 public:
  Enumerator(const TripleSet &small, const TripleSet &large)
      : small_vars_(small.Variables()), large_vars_(large.Variables()) {
    auto &index = index_;
    for (size_t i = 0; i < small_vars_.size(); ++i) index[small_vars_[i]] = i;
    // Each triple is decided once its last variable is assigned.
    by_depth_.resize(small_vars_.size());
    for (const Triple *t : All(small)) {
      int depth = index[t->source];
      if (t->kind == TripleKind::kEdge) depth = std::max(depth, index[t->target]);
      by_depth_[depth].push_back(t);
    }
    remaining_.assign(small_vars_.size() + 1, 0);
    for (int d = static_cast<int>(small_vars_.size()) - 1; d >= 0; --d) {
      remaining_[d] = remaining_[d + 1] + static_cast<int>(by_depth_[d].size());
    }
    for (const Triple *t : All(large)) ++available_[Key(*t, t->source, t->target)];
    assigned_.assign(small_vars_.size(), -1);
    used_.assign(large_vars_.size(), 0);
  }

  void Run() {
    if (small_vars_.empty()) {
      best_ = 0;
      return;
    }
    Visit(0, 0);
  }

  int best() const { return best_; }
  std::map<std::string, std::string> best_mapping() const {
    std::map<std::string, std::string> out;
    for (size_t i = 0; i < best_assignment_.size(); ++i) {
      out[small_vars_[i]] = large_vars_[best_assignment_[i]];
    }
    return out;
  }

 private:
  const std::string &Image(const std::string &var) {
    return large_vars_[assigned_[index_.at(var)]];
  }

  void Visit(size_t depth, int matched) {
    if (matched + remaining_[depth] <= best_) return;
    if (depth == small_vars_.size()) {
      best_ = matched;
      best_assignment_ = assigned_;
      return;
    }
    for (size_t b = 0; b < large_vars_.size(); ++b) {
      if (used_[b]) continue;
      used_[b] = 1;
      assigned_[depth] = static_cast<int>(b);
      std::vector<std::string> taken;
      for (const Triple *t : by_depth_[depth]) {
        std::string target =
            t->kind == TripleKind::kEdge ? Image(t->target) : t->target;
        std::string key = Key(*t, Image(t->source), target);
        auto it = available_.find(key);
        if (it != available_.end() && it->second > 0) {
          --it->second;
          taken.push_back(std::move(key));
        }
      }
      Visit(depth + 1, matched + static_cast<int>(taken.size()));
      for (const std::string &key : taken) ++available_[key];
      assigned_[depth] = -1;
      used_[b] = 0;
    }
  }

  std::vector<std::string> small_vars_, large_vars_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<const Triple *>> by_depth_;
  std::vector<int> remaining_;
  std::unordered_map<std::string, int> available_;
  std::vector<int> assigned_;
  std::vector<char> used_;
  int best_ = -1;
  std::vector<int> best_assignment_;
};

}  // namespace

SmatchScore SmatchOracle(const TripleSet &left, const TripleSet &right) {
  const size_t nl = left.Variables().size(), nr = right.Variables().size();
  if (std::min(nl, nr) > static_cast<size_t>(kOracleMaxVariables)) {
    throw InvalidArgumentError("oracle limited to " +
                               std::to_string(kOracleMaxVariables) +
                               " variables on the smaller side");
  }
  // Mapping every variable of the smaller side never loses matches, so only
  // total injective maps from the smaller side need to be enumerated.
  const bool left_small = nl <= nr;
  Enumerator e(left_small ? left : right, left_small ? right : left);
  e.Run();
  SmatchScore s = MakeScore(e.best(), static_cast<int>(left.size()),
                            static_cast<int>(right.size()));
  auto mapping = e.best_mapping();
  if (left_small) {
    s.mapping = std::move(mapping);
  } else {
    for (const auto &[r, l] : mapping) s.mapping[l] = r;
  }
  return s;
}

}  // namespace mrtk
