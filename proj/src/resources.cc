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

#include "mrtk/resources.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mrtk/errors.h"
#include "nlohmann/json.hpp"

#ifndef MRTK_RESOURCE_ROOT
#define MRTK_RESOURCE_ROOT "resources"
#endif

namespace mrtk {

namespace {

std::map<std::string, std::string> LoadInventory(
    const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in) throw ResourceError("cannot read " + file.string());
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ResourceError(file.string() + ": " + e.what());
  }
  if (!value.is_object()) {
    throw ResourceError(file.string() + ": expected an object of name -> description");
  }
  std::map<std::string, std::string> out;
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (!it->is_string()) {
      throw ResourceError(file.string() + ": description of \"" + it.key() +
                          "\" is not a string");
    }
    out.emplace(it.key(), it->get<std::string>());
  }
  return out;
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// "want-01" -> "want"; names without a numeric sense are unchanged.
std::string StripSense(const std::string &s) {
  size_t dash = s.rfind('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == s.size()) return s;
  for (size_t i = dash + 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return s;
  }
  return s.substr(0, dash);
}

}  // namespace

std::filesystem::path BuiltinResourceRoot() {
  if (const char *env = std::getenv("MRTK_RESOURCES"); env && *env) {
    return env;
  }
  return MRTK_RESOURCE_ROOT;
}

ResourceSet LoadResourceDir(const std::filesystem::path &dir) {
  const auto concepts = dir / "concepts.json";
  const auto relations = dir / "relations.json";
  bool has_concepts = std::filesystem::exists(concepts);
  bool has_relations = std::filesystem::exists(relations);
  if (!has_concepts && !has_relations) {
    throw ResourceError(dir.string() +
                        ": neither concepts.json nor relations.json found");
  }
  if (!has_concepts) throw ResourceError("missing " + concepts.string());
  if (!has_relations) throw ResourceError("missing " + relations.string());

  ResourceSet rs;
  std::filesystem::path canonical = std::filesystem::weakly_canonical(dir);
  if (canonical.filename().empty()) canonical = canonical.parent_path();
  rs.scheme = canonical.filename().string();
  if (rs.scheme.empty()) rs.scheme = "custom";
  rs.concepts = LoadInventory(concepts);
  rs.relations = LoadInventory(relations);
  return rs;
}

ResourceSet LoadResources(const std::optional<std::string> &scheme,
                          const std::optional<std::filesystem::path> &dir) {
  if (dir) return LoadResourceDir(*dir);
  const std::string name = scheme.value_or(kDefaultScheme);
  const auto path = BuiltinResourceRoot() / name;
  if (!std::filesystem::is_directory(path)) {
    throw ResourceError("unknown scheme '" + name + "' (no directory " +
                        path.string() + ")");
  }
  ResourceSet rs = LoadResourceDir(path);
  rs.scheme = name;
  return rs;
}

std::vector<SearchHit> SearchConcepts(const ResourceSet &rs,
                                      const std::string &query, int limit) {
  if (limit <= 0) throw InvalidArgumentError("search limit must be positive");
  std::string q = Lower(query);
  q.erase(0, q.find_first_not_of(" \t"));
  q.erase(q.find_last_not_of(" \t") + 1);
  if (q.empty()) return {};
  const std::string stem = StripSense(q);

  // std::map iterates names in lexicographic order, so each tier is sorted.
  std::vector<const std::pair<const std::string, std::string> *> tiers[3];
  for (const auto &entry : rs.concepts) {
    const std::string name = Lower(entry.first);
    const std::string family = StripSense(name);
    if (name == q) {
      tiers[0].push_back(&entry);
    } else if (name.starts_with(q) || family.starts_with(stem)) {
      tiers[1].push_back(&entry);
    } else if (name.find(q) != std::string::npos ||
               family.find(stem) != std::string::npos) {
      tiers[2].push_back(&entry);
    }
  }
  std::vector<SearchHit> hits;
  for (const auto &tier : tiers) {
    for (const auto *entry : tier) {
      if (static_cast<int>(hits.size()) == limit) return hits;
      hits.push_back({entry->first, entry->second});
    }
  }
  return hits;
}

std::optional<std::string> FrameDescription(const ResourceSet &rs,
                                            const std::string &name) {
  auto it = rs.concepts.find(name);
  if (it == rs.concepts.end()) return std::nullopt;
  return it->second;
}

}  // namespace mrtk
