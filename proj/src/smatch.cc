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

#include "mrtk/smatch.h"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "mrtk/errors.h"

namespace mrtk {

namespace {

// Mapping search problem over variable indices. unary[a * m + b] counts the
// triples with a single variable matched when a maps to b; each Pair counts
// the edge triples matched when a1 -> b1 and a2 -> b2 hold together.
struct Problem {
  struct Pair {
    int a1, b1, a2, b2, weight;
  };

  std::vector<std::string> left_vars, right_vars;
  int n = 0, m = 0;
  std::vector<int> unary;
  std::vector<Pair> pairs;
  std::vector<std::vector<int>> touching;  // left var -> pairs
  std::vector<std::string> left_concept, right_concept;
};

std::string UnaryKey(const Triple &t) {
  return std::to_string(static_cast<int>(t.kind)) + '\x1f' + t.label + '\x1f' +
         t.target;
}

Problem BuildProblem(const TripleSet &left, const TripleSet &right) {
  Problem p;
  p.left_vars = left.Variables();
  p.right_vars = right.Variables();
  p.n = static_cast<int>(p.left_vars.size());
  p.m = static_cast<int>(p.right_vars.size());
  std::unordered_map<std::string, int> li, ri;
  for (int i = 0; i < p.n; ++i) li[p.left_vars[i]] = i;
  for (int i = 0; i < p.m; ++i) ri[p.right_vars[i]] = i;
  p.unary.assign(static_cast<size_t>(p.n) * p.m, 0);
  p.touching.resize(p.n);
  p.left_concept.resize(p.n);
  p.right_concept.resize(p.m);
  for (const Triple &t : left.instances) {
    if (p.left_concept[li[t.source]].empty()) p.left_concept[li[t.source]] = t.target;
  }
  for (const Triple &t : right.instances) {
    if (p.right_concept[ri[t.source]].empty()) p.right_concept[ri[t.source]] = t.target;
  }

  // Unary triples: group by (var, key) with multiplicity.
  using Groups = std::map<std::pair<int, std::string>, int>;
  auto unary_groups = [](const TripleSet &t,
                         std::unordered_map<std::string, int> &index) {
    Groups g;
    for (const auto *group : {&t.instances, &t.attributes}) {
      for (const Triple &x : *group) ++g[{index[x.source], UnaryKey(x)}];
    }
    return g;
  };
  Groups lu = unary_groups(left, li), ru = unary_groups(right, ri);
  std::unordered_map<std::string, std::vector<std::pair<int, int>>> by_key;
  for (const auto &[k, count] : ru) by_key[k.second].emplace_back(k.first, count);
  for (const auto &[k, count] : lu) {
    auto it = by_key.find(k.second);
    if (it == by_key.end()) continue;
    for (const auto &[b, rcount] : it->second) {
      p.unary[static_cast<size_t>(k.first) * p.m + b] += std::min(count, rcount);
    }
  }

  // Edge triples: group by (var, label, var) with multiplicity.
  using EdgeGroups = std::map<std::tuple<std::string, int, int>, int>;
  auto edge_groups = [](const TripleSet &t,
                        std::unordered_map<std::string, int> &index) {
    EdgeGroups g;
    for (const Triple &x : t.edges) {
      ++g[{x.label, index[x.source], index[x.target]}];
    }
    return g;
  };
  EdgeGroups le = edge_groups(left, li), re = edge_groups(right, ri);
  std::unordered_map<std::string, std::vector<std::tuple<int, int, int>>>
      by_label;
  for (const auto &[k, count] : re) {
    by_label[std::get<0>(k)].emplace_back(std::get<1>(k), std::get<2>(k), count);
  }
  for (const auto &[k, count] : le) {
    auto it = by_label.find(std::get<0>(k));
    if (it == by_label.end()) continue;
    const int a1 = std::get<1>(k), a2 = std::get<2>(k);
    for (const auto &[b1, b2, rcount] : it->second) {
      const int w = std::min(count, rcount);
      if (a1 == a2) {
        if (b1 == b2) p.unary[static_cast<size_t>(a1) * p.m + b1] += w;
      } else if (b1 != b2) {
        p.touching[a1].push_back(static_cast<int>(p.pairs.size()));
        p.touching[a2].push_back(static_cast<int>(p.pairs.size()));
        p.pairs.push_back({a1, b1, a2, b2, w});
      }
    }
  }
  return p;
}

class Climber {
 public:
  Climber(const Problem &p, std::vector<int> mapping)
      : p_(p), f_(std::move(mapping)), used_(p.m, 0) {
    for (int b : f_) {
      if (b >= 0) used_[b] = 1;
    }
  }

  int Score() const {
    int s = 0;
    for (int a = 0; a < p_.n; ++a) s += Unary(a, f_[a]);
    for (const auto &pair : p_.pairs) s += Satisfied(pair, f_);
    return s;
  }

  void Run() {
    while (true) {
      int best = 0;
      int kind = 0, x = -1, y = -1;
      for (int a = 0; a < p_.n; ++a) {
        for (int b = 0; b < p_.m; ++b) {
          if (used_[b]) continue;
          int d = RemapDelta(a, b);
          if (d > best) {
            best = d;
            kind = 1;
            x = a;
            y = b;
          }
        }
      }
      for (int a = 0; a < p_.n; ++a) {
        for (int c = a + 1; c < p_.n; ++c) {
          if (f_[a] < 0 && f_[c] < 0) continue;
          int d = SwapDelta(a, c);
          if (d > best) {
            best = d;
            kind = 2;
            x = a;
            y = c;
          }
        }
      }
      if (best <= 0) return;
      if (kind == 1) {
        if (f_[x] >= 0) used_[f_[x]] = 0;
        f_[x] = y;
        used_[y] = 1;
      } else {
        std::swap(f_[x], f_[y]);
      }
    }
  }

  const std::vector<int> &mapping() const { return f_; }

 private:
  int Unary(int a, int b) const {
    return b < 0 ? 0 : p_.unary[static_cast<size_t>(a) * p_.m + b];
  }
  static int Satisfied(const Problem::Pair &pair, const std::vector<int> &f) {
    return f[pair.a1] == pair.b1 && f[pair.a2] == pair.b2 ? pair.weight : 0;
  }

  int RemapDelta(int a, int b) {
    int before = Unary(a, f_[a]), after = Unary(a, b);
    for (int i : p_.touching[a]) before += Satisfied(p_.pairs[i], f_);
    const int old = f_[a];
    f_[a] = b;
    for (int i : p_.touching[a]) after += Satisfied(p_.pairs[i], f_);
    f_[a] = old;
    return after - before;
  }

  int SwapDelta(int a, int c) {
    auto local = [&]() {
      int s = Unary(a, f_[a]) + Unary(c, f_[c]);
      for (int i : p_.touching[a]) s += Satisfied(p_.pairs[i], f_);
      for (int i : p_.touching[c]) {
        const auto &pair = p_.pairs[i];
        if (pair.a1 == a || pair.a2 == a) continue;
        s += Satisfied(pair, f_);
      }
      return s;
    };
    int before = local();
    std::swap(f_[a], f_[c]);
    int after = local();
    std::swap(f_[a], f_[c]);
    return after - before;
  }

  const Problem &p_;
  std::vector<int> f_;
  std::vector<char> used_;
};

// Maps each left variable to the first free right variable with the same
// concept, handling the most frequent concepts first.
std::vector<int> ConceptSeed(const Problem &p) {
  std::unordered_map<std::string, int> frequency;
  for (const auto &c : p.left_concept) ++frequency[c];
  std::vector<int> order(p.n);
  for (int i = 0; i < p.n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return frequency[p.left_concept[x]] > frequency[p.left_concept[y]];
  });
  std::vector<int> f(p.n, -1);
  std::vector<char> used(p.m, 0);
  for (int a : order) {
    if (p.left_concept[a].empty()) continue;
    for (int b = 0; b < p.m; ++b) {
      if (!used[b] && p.right_concept[b] == p.left_concept[a]) {
        f[a] = b;
        used[b] = 1;
        break;
      }
    }
  }
  return f;
}

std::vector<int> RandomSeed(const Problem &p, uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::vector<int> order(p.n), free(p.m);
  for (int i = 0; i < p.n; ++i) order[i] = i;
  for (int i = 0; i < p.m; ++i) free[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> f(p.n, -1);
  for (int a : order) {
    if (free.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, free.size() - 1);
    size_t k = pick(rng);
    f[a] = free[k];
    free.erase(free.begin() + k);
  }
  return f;
}

struct RestartResult {
  int matched = -1;
  std::vector<int> mapping;
};

RestartResult RunRestart(const Problem &p, int restart, uint64_t seed) {
  Climber climber(p, restart == 0 ? ConceptSeed(p) : RandomSeed(p, seed, restart));
  climber.Run();
  return {climber.Score(), climber.mapping()};
}

SmatchScore Finish(const Problem &p, const std::vector<RestartResult> &results,
                   const TripleSet &left, const TripleSet &right) {
  size_t best = 0;
  for (size_t i = 1; i < results.size(); ++i) {
    if (results[i].matched > results[best].matched) best = i;
  }
  SmatchScore s = MakeScore(results[best].matched, static_cast<int>(left.size()),
                            static_cast<int>(right.size()));
  for (int a = 0; a < p.n; ++a) {
    int b = results[best].mapping[a];
    if (b >= 0) s.mapping[p.left_vars[a]] = p.right_vars[b];
  }
  return s;
}

SmatchScore Search(const TripleSet &left, const TripleSet &right, int restarts,
                   uint64_t seed, bool parallel) {
  if (restarts < 1) throw InvalidArgumentError("restarts must be >= 1");
  const Problem p = BuildProblem(left, right);
  std::vector<RestartResult> results(restarts);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r) results[r] = RunRestart(p, r, seed);
  } else {
    for (int r = 0; r < restarts; ++r) results[r] = RunRestart(p, r, seed);
  }
  return Finish(p, results, left, right);
}

}  // namespace

SmatchScore MakeScore(int matched, int total_left, int total_right) {
  SmatchScore s;
  s.matched = matched;
  s.total_left = total_left;
  s.total_right = total_right;
  if (total_left == 0 && total_right == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  s.precision = total_left > 0 ? static_cast<double>(matched) / total_left : 0.0;
  s.recall = total_right > 0 ? static_cast<double>(matched) / total_right : 0.0;
  s.f1 = 2.0 * matched / (total_left + total_right);
  return s;
}

SmatchScore Smatch(const TripleSet &left, const TripleSet &right, int restarts,
                   uint64_t seed) {
  return Search(left, right, restarts, seed, /*parallel=*/true);
}

SmatchScore SmatchSerial(const TripleSet &left, const TripleSet &right,
                         int restarts, uint64_t seed) {
  return Search(left, right, restarts, seed, /*parallel=*/false);
}

int MatchedUnder(const std::vector<Triple> &left,
                 const std::vector<Triple> &right,
                 const std::map<std::string, std::string> &mapping) {
  std::unordered_map<std::string, int> available;
  auto key = [](const Triple &t, const std::string &source,
                const std::string &target) {
    return std::to_string(static_cast<int>(t.kind)) + '\x1f' + source + '\x1f' +
           t.label + '\x1f' + target;
  };
  for (const Triple &t : right) ++available[key(t, t.source, t.target)];
  int matched = 0;
  for (const Triple &t : left) {
    auto s = mapping.find(t.source);
    if (s == mapping.end()) continue;
    std::string target = t.target;
    if (t.kind == TripleKind::kEdge) {
      auto it = mapping.find(t.target);
      if (it == mapping.end()) continue;
      target = it->second;
    }
    auto it = available.find(key(t, s->second, target));
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return matched;
}

}  // namespace mrtk
