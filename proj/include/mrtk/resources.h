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

#ifndef MRTK_RESOURCES_H_
#define MRTK_RESOURCES_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mrtk {

// Concept and relation inventories of an annotation scheme. A resource
// directory holds concepts.json and relations.json, each a JSON object
// mapping a name to its description (for frames, the argument structure).
struct ResourceSet {
  std::string scheme;
  std::map<std::string, std::string> concepts;
  std::map<std::string, std::string> relations;
};

inline constexpr char kDefaultScheme[] = "wiser";

// Directory holding the built-in schemes (resources/<scheme>/). Taken from
// the MRTK_RESOURCES environment variable when set.
std::filesystem::path BuiltinResourceRoot();

// Loads resources from `dir`, named after the directory.
ResourceSet LoadResourceDir(const std::filesystem::path &dir);

// Resolves the resources to use: an explicit directory wins over the scheme,
// and the scheme defaults to "wiser". Throws ResourceError.
ResourceSet LoadResources(const std::optional<std::string> &scheme,
                          const std::optional<std::filesystem::path> &dir);

struct SearchHit {
  std::string name;
  std::string description;

  bool operator==(const SearchHit &) const = default;
};

// Case-insensitive search over concept names: exact matches first, then
// prefix matches, then substring matches, each tier in lexicographic order.
// A trailing sense number ("-01") on the query or the name is ignored when
// matching prefixes and substrings, so "want" and "want-02" both find
// "want-01". Throws InvalidArgumentError when limit <= 0.
std::vector<SearchHit> SearchConcepts(const ResourceSet &rs,
                                      const std::string &query, int limit);

std::optional<std::string> FrameDescription(const ResourceSet &rs,
                                            const std::string &name);

}  // namespace mrtk

#endif  // MRTK_RESOURCES_H_
