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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Tolerances and time limits are fixed
// below; none of them are tuned at run time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "httplib.h"
#include "mrtk/annotation_json.h"
#include "mrtk/cli.h"
#include "mrtk/errors.h"
#include "mrtk/penman.h"
#include "mrtk/resources.h"
#include "mrtk/server.h"
#include "mrtk/session.h"
#include "mrtk/smatch.h"
#include "nlohmann/json.hpp"
#include "test_util.h"

namespace mrtk {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::DataDir;
using testing::DemoGraph;
using testing::MakeTempDir;
using testing::ReadFile;
using testing::WriteFile;

constexpr double kGoldenLimitSeconds = 1.0;
constexpr double kPropertyLimitSeconds = 30.0;
constexpr double kSmatchLimitSeconds = 60.0;
constexpr int kPropertyGraphs = 500;
constexpr int kSelfMatchGraphs = 100;
constexpr int kOraclePairs = 200;
constexpr int kOracleMaxSideVariables = 6;
constexpr int kHillRestarts = 8;
constexpr double kMinOracleTieRate = 0.95;
constexpr double kF1Tolerance = 1e-12;
constexpr int kCorpusFiles = 10;

// Thrown by Expect; the message becomes the FAIL detail.
struct CheckFailed {
  std::string message;
};

void Expect(bool ok, const std::string &message) {
  if (!ok) throw CheckFailed{message};
}

// Criterion bodies return a short detail string for the PASS line.
struct Criterion {
  std::string name;
  double limit_seconds;  // <= 0: no limit
  std::function<std::string()> run;
};

std::string WithoutWhitespace(std::string s) {
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  return s;
}

std::string WithoutAlignments(const std::string &s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '~') {
      while (i + 1 < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
              s[i + 1] == ',' || s[i + 1] == 'e' || s[i + 1] == '.')) {
        ++i;
      }
      continue;
    }
    out += s[i];
  }
  return out;
}

// Penman text without comment lines.
std::string Body(const std::string &text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

TripleSet NamedTriples(const PenmanParse &p, size_t i = 0) {
  return RenameVariables(Triples(p.batch.graphs.at(i)), p.variables.at(i));
}

std::string FormatScore(int matched, int left, int right) {
  return std::to_string(matched) + "/" + std::to_string(left) + "/" +
         std::to_string(right);
}

std::string GoldenRoundTrip() {
  const PenmanParse parsed =
      ParsePenmanDetailed(ReadFile(DataDir() / "demo_aligned.penman"));
  Expect(parsed.batch.graphs.size() == 1, "expected one graph");
  Batch written;
  written.graphs.push_back(parsed.batch.graphs[0]);
  const Graph g = ReadJson(WriteJson(written)).graphs.at(0);
  const Graph demo = DemoGraph();
  std::string why;
  Expect(testing::EqualUpToIds(g, demo, &why),
         "write_json differs from the reference graph: " + why);
  Expect(g.concepts.size() == 4, "expected four concepts c0-c3");
  for (int i = 0; i < 4; ++i) {
    Expect(g.concepts.contains("c" + std::to_string(i)),
           "missing concept c" + std::to_string(i));
  }
  for (const Concept &c : g.concepts) {
    bool found = false;
    for (const Concept &f : demo.concepts) {
      found = found || (f.name == c.name && f.token_ids == c.token_ids &&
                        f.first_token_id == c.first_token_id &&
                        f.attribute == c.attribute);
    }
    Expect(found, "concept " + c.id + " has no reference counterpart");
  }
  Expect(g.relations.size() == 4, "expected four relations");
  for (int i = 0; i < 4; ++i) {
    const std::string id = "r" + std::to_string(i);
    Expect(g.relations.contains(id), "missing relation " + id);
    Expect(g.relations.find(id)->referent == (i == 3),
           "referent flag wrong on " + id);
  }
  Expect(g.covered_token_ids == std::vector<int>({1, 2, 4, 6, 7}),
         "covered_token_ids differ");
  Expect(g.next_concept_id == 4 && g.next_relation_id == 4,
         "counters are not 4/4");
  Expect(g.tokens == demo.tokens, "tokens differ from ::snt");

  // Serialize back and compare with the unaligned demo text.
  const PenmanOutput out = SerializePenmanWithVariables(g);
  const std::string plain_text = ReadFile(DataDir() / "demo_plain.penman");
  const PenmanParse ours = ParsePenmanDetailed(out.text);
  const PenmanParse theirs = ParsePenmanDetailed(plain_text);
  Expect(SameTriples(NamedTriples(ours), NamedTriples(theirs)),
         "serialized body differs from the plain demo text beyond sibling order");
  std::map<std::string, std::string> names;
  for (const auto &[id, var] : out.variables) {
    names[g.concepts.find(id)->name] = var;
  }
  Expect(names["want-01"] == "w" && names["boy"] == "b" &&
             names["believe-01"] == "b2" && names["girl"] == "g",
         "variable names are not w/b/b2/g");
  const std::string flat = WithoutWhitespace(WithoutAlignments(Body(out.text)));
  const size_t arg0 = flat.find(":ARG0(b/boy)");
  const size_t arg1 = flat.find(":ARG1(b2/believe-01");
  Expect(arg0 != std::string::npos && arg1 != std::string::npos && arg0 < arg1,
         "want-01 does not list ARG0 before ARG1");
  const bool literal = flat == WithoutWhitespace(Body(plain_text));
  return std::string("structure, ids, variables and ARG0<ARG1 match; ") +
         (literal ? "body literally equal"
                  : "believe-01 siblings follow token order (ARG1 b, ARG0 g)");
}

std::string PropertyRoundTrips() {
  std::mt19937_64 rng(20260417);
  int multi_root = 0, reentrant = 0, inverse = 0, attributes = 0;
  for (int i = 0; i < kPropertyGraphs; ++i) {
    const Graph g = testing::RandomGraph(rng, "prop." + std::to_string(i));
    Expect(Validate(g).empty(), "generator produced an invalid graph");
    multi_root += Roots(g).size() > 1;
    bool r = false, inv = false, attr = false;
    for (const Relation &rel : g.relations) {
      r = r || rel.referent;
      inv = inv || rel.label.ends_with("-of");
    }
    for (const Concept &c : g.concepts) attr = attr || c.attribute;
    reentrant += r;
    inverse += inv;
    attributes += attr;

    const PenmanOutput out = SerializePenmanWithVariables(g);
    const PenmanParse back = ParsePenmanDetailed(out.text);
    Expect(back.batch.graphs.size() == 1, "graph " + g.tid + " split");
    Expect(SameTriples(RenameVariables(Triples(g), out.variables),
                       NamedTriples(back)),
           "triples differ after Penman round trip for " + g.tid + ":\n" +
               out.text);
    Batch b;
    b.graphs.push_back(g);
    Expect(ReadJson(WriteJson(b)) == b, "JSON round trip differs for " + g.tid);
  }
  Expect(multi_root > 0 && reentrant > 0 && inverse > 0 && attributes > 0,
         "generator did not cover all graph features");
  return std::to_string(kPropertyGraphs) + " graphs (" +
         std::to_string(multi_root) + " multi-root, " +
         std::to_string(reentrant) + " reentrant, " + std::to_string(inverse) +
         " inverse, " + std::to_string(attributes) + " with attributes)";
}

Graph Perturb(std::mt19937_64 &rng, Graph g) {
  if (!g.relations.empty() && rng() % 2 == 0) {
    const Relation &r = g.relations[rng() % g.relations.size()];
    UpdateRelation(g, r.id, "mod");
  } else {
    const Concept &c = g.concepts[rng() % g.concepts.size()];
    UpdateConcept(g, c.id, c.attribute ? "+" : "thing");
  }
  return g;
}

std::string SmatchCorrectness() {
  std::mt19937_64 rng(17);
  for (int i = 0; i < kSelfMatchGraphs; ++i) {
    const TripleSet t = Triples(testing::RandomGraph(rng, "self"));
    const SmatchScore s = Smatch(t, t, kHillRestarts, i);
    Expect(s.f1 == 1.0, "self match below 1.0 on graph " + std::to_string(i));
  }

  testing::GeneratorOptions small;
  small.max_concepts = kOracleMaxSideVariables;
  int pairs = 0, ties = 0;
  while (pairs < kOraclePairs) {
    const Graph a = testing::RandomGraph(rng, "a", small);
    const Graph b = pairs % 2 == 0 ? Perturb(rng, a)
                                   : testing::RandomGraph(rng, "b", small);
    const TripleSet ta = Triples(a), tb = Triples(b);
    if (static_cast<int>(ta.Variables().size()) > kOracleMaxSideVariables ||
        static_cast<int>(tb.Variables().size()) > kOracleMaxSideVariables) {
      continue;
    }
    ++pairs;
    const SmatchScore exact = SmatchOracle(ta, tb);
    const SmatchScore hill = Smatch(ta, tb, kHillRestarts, pairs);
    Expect(hill.matched <= exact.matched,
           "hill-climbing beat the oracle on pair " + std::to_string(pairs));
    ties += hill.matched == exact.matched;
  }
  const double tie_rate = static_cast<double>(ties) / pairs;
  Expect(tie_rate >= kMinOracleTieRate,
         "hill-climbing tied the oracle on only " + std::to_string(ties) +
             " of " + std::to_string(pairs) + " pairs");

  Graph relabeled = DemoGraph();
  UpdateRelation(relabeled, "r0", "ARG2");
  const TripleSet gold = Triples(DemoGraph());
  const TripleSet pred = Triples(relabeled);
  const SmatchScore oracle = SmatchOracle(pred, gold);
  const SmatchScore hill = Smatch(pred, gold, kHillRestarts);
  for (const SmatchScore *s : {&oracle, &hill}) {
    Expect(s->matched == 8 && s->total_left == 9 && s->total_right == 9,
           "relabel pair scored " +
               FormatScore(s->matched, s->total_left, s->total_right));
    Expect(std::abs(s->f1 - 8.0 / 9.0) <= kF1Tolerance,
           "relabel pair f1 is not 8/9");
  }
  return "self f1 = 1.0 on " + std::to_string(kSelfMatchGraphs) +
         "; oracle ties " + std::to_string(ties) + "/" +
         std::to_string(pairs) + ", never exceeded; relabel pair 8/9";
}

std::string OrderingInvariant() {
  std::mt19937_64 rng(99);
  int parents = 0;
  for (int i = 0; i < kPropertyGraphs; ++i) {
    const Graph g = testing::RandomGraph(rng, "order." + std::to_string(i));
    // Relations of the parsed text are numbered in textual order, so the
    // parse recovers the serialized child order under each parent.
    const PenmanParse back =
        ParsePenmanDetailed(SerializePenmanWithVariables(g).text);
    const Graph &h = back.batch.graphs.at(0);
    std::map<std::string, std::vector<int>> order;
    for (const Relation &r : h.relations) {
      order[r.parent_id].push_back(h.concepts.find(r.child_id)->first_token_id);
    }
    for (const auto &[parent, ids] : order) {
      ++parents;
      bool unaligned = false;
      int last = -1;
      for (int t : ids) {
        if (t < 0) {
          unaligned = true;
          continue;
        }
        Expect(!unaligned && t >= last,
               "child order not monotone under a parent in " + g.tid);
        last = t;
      }
    }
    // The in-memory order the serializer uses obeys the same rule.
    for (const Concept &c : g.concepts) {
      bool unaligned = false;
      int last = -1;
      for (const Child &ch : OrderedChildren(g, c.id)) {
        const int t = g.concepts.find(ch.concept_id)->first_token_id;
        if (t < 0) {
          unaligned = true;
          continue;
        }
        Expect(!unaligned && t >= last, "OrderedChildren not monotone");
        last = t;
      }
    }
  }
  return std::to_string(kPropertyGraphs) + " graphs, " +
         std::to_string(parents) + " parents checked in serialized text";
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mrtk");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string CliContract() {
  const fs::path root = MakeTempDir("mrtk_accept_cli");
  const fs::path in = root / "in";
  std::mt19937_64 rng(10);
  std::vector<fs::path> files;
  for (int f = 0; f < kCorpusFiles; ++f) {
    Batch b;
    for (int k = 0; k < 5; ++k) {
      b.graphs.push_back(testing::RandomGraph(
          rng, "f" + std::to_string(f) + "." + std::to_string(k + 1)));
    }
    const fs::path rel = (f % 3 == 0 ? fs::path("sub") : fs::path()) /
                         ("file" + std::to_string(f) + ".json");
    fs::create_directories((in / rel).parent_path());
    WriteFile(in / rel, WriteJson(b));
    files.push_back(rel);
  }
  const fs::path penman = root / "penman";
  const fs::path back = root / "back";
  const CliRun a = Cli({"json-to-penman", "-i", in.string(), "-o",
                        penman.string()});
  Expect(a.code == kExitOk, "json-to-penman failed: " + a.err);
  const CliRun b = Cli({"penman-to-json", "--input", penman.string(),
                        "--output", back.string()});
  Expect(b.code == kExitOk, "penman-to-json failed: " + b.err);
  for (const fs::path &rel : files) {
    const Batch before = ReadJson(ReadFile(in / rel));
    const Batch after = ReadJson(ReadFile(back / rel));
    Expect(before.graphs.size() == after.graphs.size(),
           rel.string() + ": graph count differs");
    for (size_t i = 0; i < before.graphs.size(); ++i) {
      const Graph &g = before.graphs[i];
      const Graph &h = after.graphs[i];
      Expect(g.tid == h.tid && g.tokens == h.tokens,
             rel.string() + ": tid or tokens differ");
      Expect(SameTriples(
                 RenameVariables(Triples(g),
                                 SerializePenmanWithVariables(g).variables),
                 RenameVariables(Triples(h),
                                 SerializePenmanWithVariables(h).variables)),
             rel.string() + ": triples differ for " + g.tid);
    }
  }

  auto scheme_of = [](const CliRun &r) {
    const size_t at = r.out.find("scheme: ");
    if (at == std::string::npos) return std::string();
    return r.out.substr(at + 8, r.out.find('\n', at) - at - 8);
  };
  const CliRun def = Cli({"annotate", "-a", "ID", "--check"});
  Expect(def.code == kExitOk && scheme_of(def) == kDefaultScheme,
         "default scheme is not wiser: " + def.out + def.err);
  const CliRun amr = Cli({"annotate", "-a", "ID", "-s", "amr", "--check"});
  Expect(amr.code == kExitOk && scheme_of(amr) == "amr", "-s amr ignored");
  const CliRun amr_long =
      Cli({"annotate", "--annotator", "ID", "--scheme", "amr", "--check"});
  Expect(amr_long.code == kExitOk && scheme_of(amr_long) == "amr",
         "long flags rejected");
  const fs::path mine = root / "mine";
  fs::copy(BuiltinResourceRoot() / "amr", mine);
  const CliRun over = Cli({"annotate", "-a", "ID", "-s", "wiser", "-r",
                           mine.string(), "--check"});
  Expect(over.code == kExitOk && scheme_of(over) == "mine",
         "-r does not override -s: " + over.out + over.err);
  Expect(Cli({"annotate", "--check"}).code == kExitUsage,
         "missing -a accepted");
  Expect(Cli({"json-to-penman"}).code == kExitUsage, "missing -i accepted");
  Expect(Cli({"annotate", "-a", "ID", "-s", "nope", "--check"}).code ==
             kExitUsage,
         "unknown scheme accepted");
  return std::to_string(kCorpusFiles) +
         "-file corpus triple-identical; -a/-s/-r and -i/-o grammar, -r over "
         "-s, default wiser";
}

// A session and server on a free local port.
class Running {
 public:
  Running() {
    SessionOptions o;
    o.annotator = "ID";
    o.resources = LoadResources("amr", std::nullopt);
    session_ = std::make_unique<Session>(o);
    ServerOptions so;
    so.port = 0;
    server_ = std::make_unique<Server>(*session_, so);
    const int port = server_->Bind();
    thread_ = std::thread([this] { server_->Listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port);
  }
  ~Running() {
    server_->Stop();
    thread_.join();
  }

  json Post(const std::string &path, const json &body = json::object()) {
    auto r = client_->Post(path, body.dump(), "application/json");
    Expect(static_cast<bool>(r), "no reply from POST " + path);
    Expect(r->status == 200, "POST " + path + " returned " +
                                 std::to_string(r->status) + ": " + r->body);
    return json::parse(r->body);
  }

  json Get(const std::string &path) {
    auto r = client_->Get(path);
    Expect(static_cast<bool>(r), "no reply from GET " + path);
    Expect(r->status == 200, "GET " + path + " returned " +
                                 std::to_string(r->status));
    return json::parse(r->body);
  }

 private:
  std::unique_ptr<Session> session_;
  std::unique_ptr<Server> server_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

Graph GraphOf(const json &j) {
  return GraphFromJson(ordered_json::parse(j.dump()), "graph");
}

std::string ServerContract() {
  const fs::path dir = MakeTempDir("mrtk_accept_server");
  const fs::path text = dir / "demo.txt";
  WriteFile(text, std::string(testing::DemoSentence()) + "\n");
  Graph saved;
  {
    Running r;
    Expect(!r.Post("/open", {{"path", text.string()}})["from_claim"],
           "fresh open reported a claim file");
    const std::vector<std::pair<std::string, std::vector<int>>> concepts = {
        {"want-01", {2}}, {"boy", {1}}, {"girl", {4}}, {"believe-01", {6}}};
    for (const auto &[name, tokens] : concepts) {
      r.Post("/sentence/0/concept", {{"name", name}, {"token_ids", tokens}});
    }
    r.Post("/sentence/0/align", {{"concept_id", "c1"}, {"token_ids", {7}}});
    const std::vector<std::tuple<std::string, std::string, std::string>> rels =
        {{"c0", "c1", "ARG0"}, {"c0", "c3", "ARG1"},
         {"c3", "c2", "ARG0"}, {"c3", "c1", "ARG1"}};
    for (size_t i = 0; i < rels.size(); ++i) {
      const auto &[p, c, l] = rels[i];
      const json reply = r.Post("/sentence/0/relation",
                                {{"parent_id", p}, {"child_id", c},
                                 {"label", l}});
      Expect(reply["auto_referent"] == (i == 3),
             "auto_referent wrong on relation " + std::to_string(i));
      Expect(reply["referent"] == (i == 3),
             "referent wrong on relation " + std::to_string(i));
    }
    const json save = r.Post("/save");
    Expect(save["path"] == (dir / "demo.ID.json").string(),
           "saved to an unexpected path");
    saved = GraphOf(r.Get("/sentence/0")["graph"]);
  }
  Graph expected = DemoGraph();
  Expect(!saved.last_saved.empty(), "save did not stamp last_saved");
  expected.last_saved = saved.last_saved;
  Expect(saved == expected, "scripted graph differs from the reference");
  Expect(ReadJson(ReadFile(dir / "demo.ID.json")).graphs.at(0) == saved,
         "claim file differs from the session state");

  Running again;
  Expect(again.Post("/open", {{"path", text.string()}})["from_claim"] == true,
         "re-opening the text did not load the claim file");
  Expect(GraphOf(again.Get("/sentence/0")["graph"]) == saved,
         "state after restart differs");
  return "demo graph rebuilt over HTTP, auto-referent on r3, restart recovers "
         "demo.ID.json";
}

int Main() {
  const std::vector<Criterion> criteria = {
      {"golden-round-trip", kGoldenLimitSeconds, GoldenRoundTrip},
      {"property-round-trips", kPropertyLimitSeconds, PropertyRoundTrips},
      {"smatch-correctness", kSmatchLimitSeconds, SmatchCorrectness},
      {"argument-ordering", 0, OrderingInvariant},
      {"cli-contract", 0, CliContract},
      {"server-contract", 0, ServerContract},
  };
  int failures = 0;
  for (const Criterion &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const CheckFailed &e) {
      ok = false;
      detail = e.message;
    } catch (const std::exception &e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    char timing[64];
    if (c.limit_seconds > 0) {
      std::snprintf(timing, sizeof(timing), "%.3fs, limit %.0fs", seconds,
                    c.limit_seconds);
      if (ok && seconds >= c.limit_seconds) {
        ok = false;
        detail = "over time limit; " + detail;
      }
    } else {
      std::snprintf(timing, sizeof(timing), "%.3fs", seconds);
    }
    failures += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << " (" << timing
              << "): " << detail << std::endl;
  }
  std::cout << "SKIP ui-workflow: the browser front end is not part of this "
               "build"
            << std::endl;
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace mrtk

int main() { return mrtk::Main(); }
