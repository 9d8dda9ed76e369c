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

#include <unordered_map>

#include "mrtk/errors.h"
#include "mrtk/smatch.h"

namespace mrtk {

namespace {

bool IsTop(const Triple &t) {
  return t.kind == TripleKind::kAttribute && t.label == kTopLabel;
}

std::vector<Triple> Select(const TripleSet &t, const Category &c) {
  std::vector<Triple> out;
  for (const auto *group : {&t.instances, &t.attributes, &t.edges}) {
    for (const Triple &x : *group) {
      if (c.select(x)) out.push_back(x);
    }
  }
  return out;
}

struct Pairing {
  std::vector<std::pair<const Graph *, const Graph *>> pairs;  // (gold, pred)
};

Pairing PairByTid(const Batch &gold, const Batch &predicted) {
  std::unordered_map<std::string, const Graph *> by_tid;
  for (const Graph &g : predicted.graphs) by_tid[g.tid] = &g;
  Pairing p;
  std::vector<std::string> gold_only, pred_only;
  std::unordered_map<std::string, bool> in_gold;
  for (const Graph &g : gold.graphs) {
    in_gold[g.tid] = true;
    auto it = by_tid.find(g.tid);
    if (it == by_tid.end()) {
      gold_only.push_back(g.tid);
    } else {
      p.pairs.emplace_back(&g, it->second);
    }
  }
  for (const Graph &g : predicted.graphs) {
    if (!in_gold.count(g.tid)) pred_only.push_back(g.tid);
  }
  if (!gold_only.empty() || !pred_only.empty()) {
    std::string message = "cannot pair graphs by tid;";
    auto list = [&](const char *what, const std::vector<std::string> &tids) {
      if (tids.empty()) return;
      message += std::string(" only in ") + what + ":";
      for (const auto &t : tids) message += " " + t;
      message += ";";
    };
    list("gold", gold_only);
    list("predicted", pred_only);
    throw InvalidArgumentError(message);
  }
  return p;
}

SentenceScore ScorePair(const Graph &gold, const Graph &pred,
                        const EvalOptions &options,
                        const std::vector<Category> &categories) {
  TripleSet left = Triples(pred), right = Triples(gold);
  SentenceScore s;
  s.tid = gold.tid;
  s.score = SmatchSerial(left, right, options.restarts, options.seed);
  if (!categories.empty()) {
    s.categories = Breakdown(left, right, s.score.mapping, categories);
  }
  return s;
}

CorpusScore Evaluate(const Batch &gold, const Batch &predicted,
                     const EvalOptions &options, bool parallel) {
  if (options.restarts < 1) throw InvalidArgumentError("restarts must be >= 1");
  Pairing pairing = PairByTid(gold, predicted);
  std::vector<Category> categories;
  for (const auto &name : options.categories) {
    categories.push_back(ResolveCategory(name));
  }

  CorpusScore corpus;
  const int n = static_cast<int>(pairing.pairs.size());
  corpus.sentences.resize(n);
  if (parallel) {
    // Exceptions must not escape the parallel region.
    std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
      try {
        corpus.sentences[i] = ScorePair(*pairing.pairs[i].first,
                                        *pairing.pairs[i].second, options,
                                        categories);
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
    for (const auto &e : errors) {
      if (!e.empty()) throw Error(e);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      corpus.sentences[i] = ScorePair(*pairing.pairs[i].first,
                                      *pairing.pairs[i].second, options,
                                      categories);
    }
  }

  int matched = 0, left = 0, right = 0;
  std::vector<int> cm(categories.size()), cl(categories.size()),
      cr(categories.size());
  for (const SentenceScore &s : corpus.sentences) {
    matched += s.score.matched;
    left += s.score.total_left;
    right += s.score.total_right;
    for (size_t c = 0; c < s.categories.size(); ++c) {
      cm[c] += s.categories[c].score.matched;
      cl[c] += s.categories[c].score.total_left;
      cr[c] += s.categories[c].score.total_right;
    }
  }
  corpus.total = MakeScore(matched, left, right);
  for (size_t c = 0; c < categories.size(); ++c) {
    corpus.categories.push_back(
        {categories[c].name, MakeScore(cm[c], cl[c], cr[c])});
  }
  return corpus;
}

}  // namespace

std::vector<std::string> BuiltinCategoryNames() {
  return {"instances", "edges",      "core-roles", "attributes",
          "polarity",  "reentrancy", "top"};
}

Category ResolveCategory(const std::string &name) {
  if (name == "instances") {
    return {name, [](const Triple &t) { return t.kind == TripleKind::kInstance; }};
  }
  if (name == "edges") {
    return {name, [](const Triple &t) { return t.kind == TripleKind::kEdge; }};
  }
  if (name == "core-roles") {
    return {name, [](const Triple &t) {
              return t.kind == TripleKind::kEdge && t.label.starts_with("ARG");
            }};
  }
  if (name == "attributes") {
    return {name, [](const Triple &t) {
              return t.kind == TripleKind::kAttribute && !IsTop(t);
            }};
  }
  if (name == "polarity") {
    return {name, [](const Triple &t) {
              return t.kind == TripleKind::kAttribute && t.label == "polarity";
            }};
  }
  if (name == "reentrancy") {
    return {name, [](const Triple &t) {
              return t.kind == TripleKind::kEdge && t.referent;
            }};
  }
  if (name == "top") return {name, IsTop};
  if (name.starts_with("label:") && name.size() > 6) {
    std::string prefix = name.substr(6);
    return {name, [prefix](const Triple &t) {
              return t.kind == TripleKind::kEdge && t.label.starts_with(prefix);
            }};
  }
  throw InvalidArgumentError("unknown breakdown category '" + name + "'");
}

std::vector<CategoryScore> Breakdown(
    const TripleSet &left, const TripleSet &right,
    const std::map<std::string, std::string> &mapping,
    const std::vector<Category> &categories) {
  std::vector<CategoryScore> out;
  for (const Category &c : categories) {
    std::vector<Triple> l = Select(left, c), r = Select(right, c);
    out.push_back({c.name, MakeScore(MatchedUnder(l, r, mapping),
                                     static_cast<int>(l.size()),
                                     static_cast<int>(r.size()))});
  }
  return out;
}

std::vector<CategoryScore> Breakdown(const Graph &left, const Graph &right,
                                     const std::vector<std::string> &categories,
                                     int restarts, uint64_t seed) {
  std::vector<Category> resolved;
  for (const auto &name : categories) resolved.push_back(ResolveCategory(name));
  TripleSet l = Triples(left), r = Triples(right);
  SmatchScore full = Smatch(l, r, restarts, seed);
  return Breakdown(l, r, full.mapping, resolved);
}

CorpusScore EvaluateCorpus(const Batch &gold, const Batch &predicted,
                           const EvalOptions &options) {
  return Evaluate(gold, predicted, options, /*parallel=*/true);
}

CorpusScore EvaluateCorpusSerial(const Batch &gold, const Batch &predicted,
                                 const EvalOptions &options) {
  return Evaluate(gold, predicted, options, /*parallel=*/false);
}

}  // namespace mrtk
