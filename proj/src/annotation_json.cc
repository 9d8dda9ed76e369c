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

#include "mrtk/annotation_json.h"

#include <ctime>
#include <set>
#include <sstream>

#include "mrtk/errors.h"

namespace mrtk {

namespace {

const std::set<std::string> kGraphKeys = {
    "tid",       "annotator",         "last_saved",  "tokens",
    "concepts",  "relations",         "covered_token_ids",
    "_concept_id", "_relation_id",    "metadata"};
const std::set<std::string> kConceptKeys = {"name", "token_ids", "attribute",
                                            "first_token_id"};
const std::set<std::string> kRelationKeys = {"parent_id", "child_id", "label",
                                             "referent"};

[[noreturn]] void SchemaFail(const std::string &path,
                             const std::string &message) {
  throw SchemaError(path + ": " + message);
}

const ordered_json &Require(const ordered_json &object, const std::string &key,
                            const std::string &path) {
  auto it = object.find(key);
  if (it == object.end()) SchemaFail(path, "missing key \"" + key + "\"");
  return *it;
}

std::string GetString(const ordered_json &object, const std::string &key,
                      const std::string &path) {
  const ordered_json &v = Require(object, key, path);
  if (!v.is_string()) SchemaFail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool GetBool(const ordered_json &object, const std::string &key,
             const std::string &path) {
  const ordered_json &v = Require(object, key, path);
  if (!v.is_boolean()) SchemaFail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

int GetInt(const ordered_json &object, const std::string &key,
           const std::string &path) {
  const ordered_json &v = Require(object, key, path);
  if (!v.is_number_integer()) {
    SchemaFail(path + "." + key, "expected an integer");
  }
  return v.get<int>();
}

std::vector<int> GetIntArray(const ordered_json &object, const std::string &key,
                             const std::string &path) {
  const ordered_json &v = Require(object, key, path);
  if (!v.is_array()) SchemaFail(path + "." + key, "expected an array");
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      SchemaFail(path + "." + key + "[" + std::to_string(i) + "]",
                 "expected an integer");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

const ordered_json &GetObject(const ordered_json &object,
                              const std::string &key, const std::string &path) {
  const ordered_json &v = Require(object, key, path);
  if (!v.is_object()) SchemaFail(path + "." + key, "expected an object");
  return v;
}

Extras CollectExtras(const ordered_json &object,
                     const std::set<std::string> &known) {
  Extras extras;
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (known.count(it.key()) == 0) extras.emplace_back(it.key(), it->dump());
  }
  return extras;
}

void AppendExtras(ordered_json &object, const Extras &extras) {
  for (const auto &[key, text] : extras) {
    object[key] = ordered_json::parse(text);
  }
}

std::string Scalar(const ordered_json &value) {
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

void Format(const ordered_json &value, int indent, std::string &out) {
  const std::string pad(indent + 2, ' ');
  if (value.is_object()) {
    if (value.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Scalar(ordered_json(it.key())) + ": ";
      Format(*it, indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (value.is_array()) {
    bool flat = true;
    for (const auto &v : value) {
      if (v.is_structured()) flat = false;
    }
    if (flat) {
      out += "[";
      for (size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ", ";
        out += Scalar(value[i]);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (size_t i = 0; i < value.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      Format(value[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else {
    out += Scalar(value);
  }
}

void CheckCounter(const std::string &id, char prefix, int counter,
                  const std::string &path) {
  auto n = IdNumber(id, prefix);
  if (!n) SchemaFail(path, "id is not of the form " + std::string(1, prefix) + "<n>");
  if (*n >= counter) {
    SchemaFail(path, "id number " + std::to_string(*n) +
                         " is not below the counter " + std::to_string(counter));
  }
}

}  // namespace

std::string BaseName(const std::string &name) {
  std::filesystem::path p(name);
  std::string stem = p.stem().string();
  return stem.empty() ? p.filename().string() : stem;
}

Batch ReadPlainText(const std::string &name, std::string_view text,
                    const std::string &annotator) {
  Batch batch;
  batch.source_name = BaseName(name);
  std::istringstream in{std::string(text)};
  std::string line;
  int ordinal = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream words(line);
    std::vector<std::string> tokens;
    std::string w;
    while (words >> w) tokens.push_back(w);
    if (tokens.empty()) continue;
    ++ordinal;
    batch.graphs.push_back(NewGraph(
        batch.source_name + "." + std::to_string(ordinal), annotator,
        std::move(tokens)));
  }
  return batch;
}

ordered_json GraphToJson(const Graph &g) {
  ordered_json out = ordered_json::object();
  out["tid"] = g.tid;
  out["annotator"] = g.annotator;
  out["last_saved"] = g.last_saved;
  out["tokens"] = g.tokens;
  ordered_json concepts = ordered_json::object();
  for (const Concept &c : g.concepts) {
    ordered_json entry = ordered_json::object();
    entry["name"] = c.name;
    entry["token_ids"] = c.token_ids;
    entry["attribute"] = c.attribute;
    entry["first_token_id"] = c.first_token_id;
    AppendExtras(entry, c.extras);
    concepts[c.id] = std::move(entry);
  }
  out["concepts"] = std::move(concepts);
  ordered_json relations = ordered_json::object();
  for (const Relation &r : g.relations) {
    ordered_json entry = ordered_json::object();
    entry["parent_id"] = r.parent_id;
    entry["child_id"] = r.child_id;
    entry["label"] = r.label;
    entry["referent"] = r.referent;
    AppendExtras(entry, r.extras);
    relations[r.id] = std::move(entry);
  }
  out["relations"] = std::move(relations);
  out["covered_token_ids"] = g.covered_token_ids;
  out["_concept_id"] = g.next_concept_id;
  out["_relation_id"] = g.next_relation_id;
  if (!g.metadata.empty()) {
    ordered_json meta = ordered_json::array();
    for (const auto &[key, value] : g.metadata) {
      meta.push_back(ordered_json::array({key, value}));
    }
    out["metadata"] = std::move(meta);
  }
  AppendExtras(out, g.extras);
  return out;
}

Graph GraphFromJson(const ordered_json &value, const std::string &path) {
  if (!value.is_object()) SchemaFail(path, "expected an object");
  Graph g;
  g.tid = GetString(value, "tid", path);
  g.annotator = GetString(value, "annotator", path);
  g.last_saved = GetString(value, "last_saved", path);
  const ordered_json &tokens = Require(value, "tokens", path);
  if (!tokens.is_array()) SchemaFail(path + ".tokens", "expected an array");
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].is_string()) {
      SchemaFail(path + ".tokens[" + std::to_string(i) + "]",
                 "expected a string");
    }
    g.tokens.push_back(tokens[i].get<std::string>());
  }
  g.next_concept_id = GetInt(value, "_concept_id", path);
  g.next_relation_id = GetInt(value, "_relation_id", path);

  const ordered_json &concepts = GetObject(value, "concepts", path);
  for (auto it = concepts.begin(); it != concepts.end(); ++it) {
    const std::string cpath = path + ".concepts." + it.key();
    if (!it->is_object()) SchemaFail(cpath, "expected an object");
    CheckCounter(it.key(), 'c', g.next_concept_id, cpath);
    Concept c;
    c.id = it.key();
    c.name = GetString(*it, "name", cpath);
    c.token_ids = GetIntArray(*it, "token_ids", cpath);
    c.attribute = GetBool(*it, "attribute", cpath);
    c.first_token_id = GetInt(*it, "first_token_id", cpath);
    c.extras = CollectExtras(*it, kConceptKeys);
    g.concepts.insert(std::move(c));
  }
  const ordered_json &relations = GetObject(value, "relations", path);
  for (auto it = relations.begin(); it != relations.end(); ++it) {
    const std::string rpath = path + ".relations." + it.key();
    if (!it->is_object()) SchemaFail(rpath, "expected an object");
    CheckCounter(it.key(), 'r', g.next_relation_id, rpath);
    Relation r;
    r.id = it.key();
    r.parent_id = GetString(*it, "parent_id", rpath);
    r.child_id = GetString(*it, "child_id", rpath);
    r.label = GetString(*it, "label", rpath);
    r.referent = GetBool(*it, "referent", rpath);
    r.extras = CollectExtras(*it, kRelationKeys);
    g.relations.insert(std::move(r));
  }
  g.covered_token_ids = GetIntArray(value, "covered_token_ids", path);

  if (auto it = value.find("metadata"); it != value.end()) {
    const std::string mpath = path + ".metadata";
    if (!it->is_array()) SchemaFail(mpath, "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const ordered_json &pair = (*it)[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string()) {
        SchemaFail(mpath + "[" + std::to_string(i) + "]",
                   "expected a [key, value] pair of strings");
      }
      g.metadata.emplace_back(pair[0].get<std::string>(),
                              pair[1].get<std::string>());
    }
  }
  g.extras = CollectExtras(value, kGraphKeys);
  return g;
}

std::string FormatJson(const ordered_json &value) {
  std::string out;
  Format(value, 0, out);
  out += "\n";
  return out;
}

std::string WriteJson(const Batch &batch) {
  ordered_json root = ordered_json::object();
  ordered_json graphs = ordered_json::array();
  for (const Graph &g : batch.graphs) {
    CheckValid(g);
    graphs.push_back(GraphToJson(g));
  }
  root["graphs"] = std::move(graphs);
  AppendExtras(root, batch.extras);
  return FormatJson(root);
}

Batch ReadJson(std::string_view text, const std::string &source_name) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw SchemaError(std::string("$: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) SchemaFail("$", "expected an object");
  const ordered_json &graphs = Require(root, "graphs", "$");
  if (!graphs.is_array()) SchemaFail("graphs", "expected an array");

  Batch batch;
  batch.source_name = source_name;
  std::set<std::string> tids;
  for (size_t i = 0; i < graphs.size(); ++i) {
    const std::string path = "graphs[" + std::to_string(i) + "]";
    Graph g = GraphFromJson(graphs[i], path);
    if (!tids.insert(g.tid).second) {
      SchemaFail(path + ".tid", "duplicate tid \"" + g.tid + "\"");
    }
    CheckValid(g);
    batch.graphs.push_back(std::move(g));
  }
  batch.extras = CollectExtras(root, {"graphs"});
  return batch;
}

std::string FormatTimestamp(std::chrono::system_clock::time_point t) {
  std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  localtime_r(&tt, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%m/%d/%Y %H:%M:%S", &tm);
  return buffer;
}

std::filesystem::path ClaimFileName(const std::filesystem::path &source,
                                    const std::string &annotator) {
  const std::string suffix = "." + annotator + ".json";
  const std::string file = source.filename().string();
  if (file.size() > suffix.size() &&
      file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return source;
  }
  return source.parent_path() / (source.stem().string() + suffix);
}

}  // namespace mrtk
