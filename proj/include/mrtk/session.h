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

// One annotator's editing session over one batch.
//
// Opening "dir/story.txt" (or .penman, or .json) as annotator ID claims
// "dir/story.ID.json": if that file exists it is loaded instead of the
// source, otherwise the source is ingested and the claim file is created on
// the first save. Every successful mutation schedules a background write of
// the claim file; writes are coalesced so at most one is pending.
//
// Thread safety: mutations are serialized; readers may run concurrently
// with each other and always see a fully applied mutation.

#ifndef MRTK_SESSION_H_
#define MRTK_SESSION_H_

#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "mrtk/graph.h"
#include "mrtk/resources.h"

namespace mrtk {

struct SessionOptions {
  std::string annotator;
  ResourceSet resources;
  bool autosave = true;
};

struct OpenInfo {
  std::filesystem::path source;
  std::filesystem::path claim_path;
  bool from_claim = false;  // the claim file existed and was loaded
  int sentences = 0;
};

struct MutationResult {
  Graph graph;  // state after the mutation
  std::vector<std::string> warnings;
  std::string id;  // created concept or relation, if any
  bool referent = false;
  bool auto_referent = false;
};

struct SentenceSummary {
  int index = 0;
  std::string tid;
  std::string text;
  int concepts = 0;
  int relations = 0;
  bool dirty = false;
};

class Session {
 public:
  explicit Session(SessionOptions options);
  // Flushes any pending autosave.
  ~Session();

  Session(const Session &) = delete;
  Session &operator=(const Session &) = delete;

  // Replaces the current batch. Throws NotFoundError if the file is missing,
  // InvalidArgumentError for an unsupported extension, and ParseError or
  // SchemaError for malformed content. A failed open keeps the old batch.
  OpenInfo Open(const std::filesystem::path &path);

  bool is_open() const;
  const std::string &annotator() const { return options_.annotator; }
  const ResourceSet &resources() const { return options_.resources; }
  std::optional<OpenInfo> info() const;

  Batch Snapshot() const;
  std::vector<SentenceSummary> Summaries() const;
  Graph Sentence(int index) const;
  int cursor() const;
  void SetCursor(int index);

  MutationResult AddConcept(int index, const std::string &name,
                            const std::vector<int> &token_ids, bool attribute);
  MutationResult AddRelation(int index, const std::string &parent_id,
                             const std::string &child_id,
                             const std::string &label, bool referent,
                             bool inverse);
  MutationResult UpdateConcept(int index, const std::string &id,
                               const std::string &name);
  MutationResult UpdateRelation(int index, const std::string &id,
                                const std::string &label);
  MutationResult DeleteConcept(int index, const std::string &id);
  MutationResult DeleteRelation(int index, const std::string &id);
  MutationResult Align(int index, const std::string &id,
                       const std::vector<int> &token_ids, bool remove);

  // Writes the claim file now, stamping last_saved on modified graphs.
  // Returns the path written.
  std::filesystem::path Save();

  // Penman text of the whole batch.
  std::string ExportPenman() const;

  // Blocks until no autosave is pending or running.
  void Flush();

  // The error of the most recent failed autosave, cleared by the call.
  std::optional<std::string> TakeAutosaveError();

 private:
  template <typename Fn>
  MutationResult Mutate(int index, Fn &&fn);
  Graph &GraphAt(int index);
  const Graph &GraphAt(int index) const;
  std::vector<std::string> Warnings(const Graph &g) const;
  // Requires mu_ held exclusively. With only_if_dirty, a clean batch is
  // not written.
  void SaveLocked(bool only_if_dirty);
  void AutosaveLoop();
  void Schedule();

  SessionOptions options_;

  mutable std::shared_mutex mu_;  // guards the fields below
  std::optional<OpenInfo> info_;
  Batch batch_;
  std::vector<bool> dirty_;
  int cursor_ = 0;

  std::mutex autosave_mu_;  // guards the fields below
  std::condition_variable autosave_cv_;
  bool pending_ = false;
  bool writing_ = false;
  bool stop_ = false;
  std::optional<std::string> autosave_error_;
  std::thread autosave_thread_;
};

// Advisory warnings for a graph: names and labels absent from the
// inventory and names that cannot be written as Penman symbols.
std::vector<std::string> InventoryWarnings(const Graph &g,
                                           const ResourceSet &resources);

}  // namespace mrtk

#endif  // MRTK_SESSION_H_
