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

#include "mrtk/session.h"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "mrtk/annotation_json.h"
#include "mrtk/errors.h"
#include "mrtk/penman.h"

namespace mrtk {

namespace {

std::string ReadText(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Writes through a temporary file so readers never see a partial file.
void WriteAtomically(const std::filesystem::path &path,
                     const std::string &text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot replace " + path.string());
  }
}

bool IsQuotedString(const std::string &s) {
  return s.size() >= 2 && s.front() == '"' && s.back() == '"';
}

std::string BaseLabel(const std::string &label, const ResourceSet &rs) {
  if (rs.relations.count(label) == 0 && label.size() > 3 &&
      label.ends_with("-of")) {
    return label.substr(0, label.size() - 3);
  }
  return label;
}

}  // namespace

std::vector<std::string> InventoryWarnings(const Graph &g,
                                           const ResourceSet &resources) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto warn = [&](std::string message) {
    if (seen.insert(message).second) out.push_back(std::move(message));
  };
  for (const Concept &c : g.concepts) {
    if (!IsPenmanSymbol(c.name) && !IsQuotedString(c.name)) {
      warn("concept " + c.id + " name '" + c.name +
           "' cannot be written as a Penman symbol");
    }
    if (!c.attribute && resources.concepts.count(c.name) == 0) {
      warn("concept '" + c.name + "' is not in the " + resources.scheme +
           " inventory");
    }
  }
  for (const Relation &r : g.relations) {
    if (resources.relations.count(BaseLabel(r.label, resources)) == 0) {
      warn("relation label '" + r.label + "' is not in the " +
           resources.scheme + " inventory");
    }
  }
  return out;
}

Session::Session(SessionOptions options) : options_(std::move(options)) {
  if (options_.annotator.empty()) {
    throw InvalidArgumentError("annotator id must not be empty");
  }
  if (options_.autosave) {
    autosave_thread_ = std::thread([this] { AutosaveLoop(); });
  }
}

Session::~Session() {
  Flush();
  {
    std::lock_guard lock(autosave_mu_);
    stop_ = true;
  }
  autosave_cv_.notify_all();
  if (autosave_thread_.joinable()) autosave_thread_.join();
}

OpenInfo Session::Open(const std::filesystem::path &path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw NotFoundError("no such file " + path.string());
  }
  const std::string ext = path.extension().string();
  if (ext != ".txt" && ext != ".penman" && ext != ".amr" && ext != ".json") {
    throw InvalidArgumentError("unsupported file type '" + ext +
                               "' (expected .txt, .penman or .json)");
  }
  // Pending writes belong to the batch being replaced.
  Flush();

  OpenInfo info;
  info.source = path;
  info.claim_path = ClaimFileName(path, options_.annotator);
  Batch batch;
  if (std::filesystem::is_regular_file(info.claim_path)) {
    batch = ReadJson(ReadText(info.claim_path), BaseName(path.string()));
    info.from_claim = true;
  } else if (ext == ".txt") {
    batch = ReadPlainText(path.string(), ReadText(path), options_.annotator);
  } else if (ext == ".json") {
    batch = ReadJson(ReadText(path), BaseName(path.string()));
  } else {
    batch = ParsePenman(ReadText(path), BaseName(path.string()));
  }
  if (!info.from_claim) {
    for (Graph &g : batch.graphs) {
      if (g.annotator.empty()) g.annotator = options_.annotator;
    }
  }
  info.sentences = static_cast<int>(batch.graphs.size());

  std::unique_lock lock(mu_);
  batch_ = std::move(batch);
  dirty_.assign(batch_.graphs.size(), false);
  cursor_ = 0;
  info_ = info;
  return info;
}

bool Session::is_open() const {
  std::shared_lock lock(mu_);
  return info_.has_value();
}

std::optional<OpenInfo> Session::info() const {
  std::shared_lock lock(mu_);
  return info_;
}

Batch Session::Snapshot() const {
  std::shared_lock lock(mu_);
  return batch_;
}

std::vector<SentenceSummary> Session::Summaries() const {
  std::shared_lock lock(mu_);
  std::vector<SentenceSummary> out;
  for (size_t i = 0; i < batch_.graphs.size(); ++i) {
    const Graph &g = batch_.graphs[i];
    SentenceSummary s;
    s.index = static_cast<int>(i);
    s.tid = g.tid;
    for (size_t t = 0; t < g.tokens.size(); ++t) {
      if (t > 0) s.text += ' ';
      s.text += g.tokens[t];
    }
    s.concepts = static_cast<int>(g.concepts.size());
    s.relations = static_cast<int>(g.relations.size());
    s.dirty = dirty_[i];
    out.push_back(std::move(s));
  }
  return out;
}

Graph &Session::GraphAt(int index) {
  if (!info_) throw InvariantError("no batch is open");
  if (index < 0 || index >= static_cast<int>(batch_.graphs.size())) {
    throw NotFoundError("no sentence " + std::to_string(index));
  }
  return batch_.graphs[index];
}

const Graph &Session::GraphAt(int index) const {
  return const_cast<Session *>(this)->GraphAt(index);
}

Graph Session::Sentence(int index) const {
  std::shared_lock lock(mu_);
  return GraphAt(index);
}

int Session::cursor() const {
  std::shared_lock lock(mu_);
  return cursor_;
}

void Session::SetCursor(int index) {
  std::unique_lock lock(mu_);
  GraphAt(index);
  cursor_ = index;
}

std::vector<std::string> Session::Warnings(const Graph &g) const {
  return InventoryWarnings(g, options_.resources);
}

template <typename Fn>
MutationResult Session::Mutate(int index, Fn &&fn) {
  MutationResult result;
  {
    std::unique_lock lock(mu_);
    Graph work = GraphAt(index);
    fn(work, result);
    CheckValid(work);
    batch_.graphs[index] = work;
    dirty_[index] = true;
    cursor_ = index;
    result.warnings = Warnings(work);
    result.graph = std::move(work);
  }
  Schedule();
  return result;
}

MutationResult Session::AddConcept(int index, const std::string &name,
                                   const std::vector<int> &token_ids,
                                   bool attribute) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    r.id = mrtk::AddConcept(g, name, token_ids, attribute);
  });
}

MutationResult Session::AddRelation(int index, const std::string &parent_id,
                                    const std::string &child_id,
                                    const std::string &label, bool referent,
                                    bool inverse) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    AddedRelation added =
        mrtk::AddRelation(g, parent_id, child_id, label, referent, inverse);
    r.id = added.id;
    r.referent = added.referent;
    r.auto_referent = added.auto_referent;
  });
}

MutationResult Session::UpdateConcept(int index, const std::string &id,
                                      const std::string &name) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    mrtk::UpdateConcept(g, id, name);
    r.id = id;
  });
}

MutationResult Session::UpdateRelation(int index, const std::string &id,
                                       const std::string &label) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    mrtk::UpdateRelation(g, id, label);
    r.id = id;
  });
}

MutationResult Session::DeleteConcept(int index, const std::string &id) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    mrtk::DeleteConcept(g, id);
    r.id = id;
  });
}

MutationResult Session::DeleteRelation(int index, const std::string &id) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    mrtk::DeleteRelation(g, id);
    r.id = id;
  });
}

MutationResult Session::Align(int index, const std::string &id,
                              const std::vector<int> &token_ids, bool remove) {
  return Mutate(index, [&](Graph &g, MutationResult &r) {
    if (remove) {
      mrtk::Unalign(g, id, token_ids);
    } else {
      mrtk::Align(g, id, token_ids);
    }
    r.id = id;
  });
}

void Session::SaveLocked(bool only_if_dirty) {
  if (!info_) throw InvariantError("no batch is open");
  bool any_dirty = false;
  for (bool d : dirty_) any_dirty = any_dirty || d;
  if (only_if_dirty && !any_dirty) return;

  Batch out = batch_;
  const std::string now = FormatTimestamp(std::chrono::system_clock::now());
  for (size_t i = 0; i < out.graphs.size(); ++i) {
    if (dirty_[i]) out.graphs[i].last_saved = now;
  }
  WriteAtomically(info_->claim_path, WriteJson(out));
  for (size_t i = 0; i < out.graphs.size(); ++i) {
    if (dirty_[i]) batch_.graphs[i].last_saved = now;
  }
  dirty_.assign(batch_.graphs.size(), false);
}

std::filesystem::path Session::Save() {
  Flush();
  std::unique_lock lock(mu_);
  SaveLocked(/*only_if_dirty=*/false);
  return info_->claim_path;
}

std::string Session::ExportPenman() const {
  std::shared_lock lock(mu_);
  if (!info_) throw InvariantError("no batch is open");
  return SerializePenman(batch_);
}

void Session::Schedule() {
  if (!options_.autosave) return;
  {
    std::lock_guard lock(autosave_mu_);
    pending_ = true;
  }
  autosave_cv_.notify_all();
}

void Session::AutosaveLoop() {
  std::unique_lock lock(autosave_mu_);
  while (true) {
    autosave_cv_.wait(lock, [this] { return pending_ || stop_; });
    if (!pending_) return;
    pending_ = false;
    writing_ = true;
    lock.unlock();
    std::optional<std::string> error;
    try {
      std::unique_lock state(mu_);
      SaveLocked(/*only_if_dirty=*/true);
    } catch (const std::exception &e) {
      error = std::string("autosave failed: ") + e.what();
    }
    lock.lock();
    writing_ = false;
    if (error) autosave_error_ = error;
    autosave_cv_.notify_all();
  }
}

void Session::Flush() {
  std::unique_lock lock(autosave_mu_);
  autosave_cv_.wait(lock, [this] { return (!pending_ && !writing_) || stop_; });
}

std::optional<std::string> Session::TakeAutosaveError() {
  std::lock_guard lock(autosave_mu_);
  std::optional<std::string> error;
  error.swap(autosave_error_);
  return error;
}

}  // namespace mrtk
