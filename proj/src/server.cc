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

#include "mrtk/server.h"

#include <sys/socket.h>

#include <functional>

#include "httplib.h"
#include "mrtk/annotation_json.h"
#include "mrtk/errors.h"
#include "mrtk/penman.h"
#include "nlohmann/json.hpp"

namespace mrtk {

namespace {

using json = nlohmann::ordered_json;

class BadRequest : public InvalidArgumentError {
 public:
  using InvalidArgumentError::InvalidArgumentError;
};

json ParseBody(const httplib::Request &req) {
  if (req.body.empty()) return json::object();
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error &e) {
    throw BadRequest(std::string("malformed JSON body: ") + e.what());
  }
  if (!body.is_object()) throw BadRequest("request body must be an object");
  return body;
}

std::string RequireString(const json &body, const char *key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw BadRequest(std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

bool OptionalBool(const json &body, const char *key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return false;
  if (!it->is_boolean()) {
    throw BadRequest(std::string("field \"") + key + "\" must be a boolean");
  }
  return it->get<bool>();
}

std::vector<int> OptionalInts(const json &body, const char *key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return {};
  if (!it->is_array()) {
    throw BadRequest(std::string("field \"") + key + "\" must be an array");
  }
  std::vector<int> out;
  for (const json &v : *it) {
    if (!v.is_number_integer()) {
      throw BadRequest(std::string("field \"") + key +
                       "\" must contain integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

int Index(const httplib::Request &req) {
  try {
    return std::stoi(req.matches[1].str());
  } catch (const std::exception &) {
    throw NotFoundError("no sentence " + req.matches[1].str());
  }
}

json GraphJson(const Graph &g) { return GraphToJson(g); }

json MutationJson(const MutationResult &r) {
  json out = {{"id", r.id}, {"graph", GraphJson(r.graph)},
              {"warnings", r.warnings}};
  return out;
}

json OpenJson(const OpenInfo &info) {
  return {{"source", info.source.string()},
          {"claim_path", info.claim_path.string()},
          {"from_claim", info.from_claim},
          {"sentences", info.sentences}};
}

}  // namespace

struct Server::Impl {
  Impl(Session &s, ServerOptions o) : session(s), options(std::move(o)) {
    // The library default sets SO_REUSEPORT, which lets a second server
    // share a port already in use. Two sessions on one port is an error.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
  }

  using Handler = std::function<json(const httplib::Request &)>;

  // Maps library errors onto HTTP statuses.
  httplib::Server::Handler Wrap(Handler fn) {
    return [this, fn](const httplib::Request &req, httplib::Response &res) {
      int status = 200;
      json body;
      if (auto error = session.TakeAutosaveError()) {
        status = 500;
        body = {{"error", *error}};
      } else {
        try {
          body = fn(req);
        } catch (const NotFoundError &e) {
          status = 404;
          body = {{"error", e.what()}};
        } catch (const InvariantError &e) {
          status = 409;
          body = {{"error", e.what()}};
        } catch (const RangeError &e) {
          status = 400;
          body = {{"error", e.what()}};
        } catch (const InvalidArgumentError &e) {
          status = 400;
          body = {{"error", e.what()}};
        } catch (const ParseError &e) {
          status = 400;
          body = {{"error", e.what()}};
        } catch (const SchemaError &e) {
          status = 400;
          body = {{"error", e.what()}};
        } catch (const std::exception &e) {
          status = 500;
          body = {{"error", e.what()}};
        }
      }
      res.status = status;
      if (body.is_string()) {
        res.set_content(body.get<std::string>(), "text/plain; charset=utf-8");
      } else {
        res.set_content(body.dump(), "application/json");
      }
    };
  }

  void Routes() {
    http.Post("/open", Wrap([this](const httplib::Request &req) {
                json body = ParseBody(req);
                return OpenJson(session.Open(RequireString(body, "path")));
              }));

    http.Get("/batch", Wrap([this](const httplib::Request &) {
               json out = {{"annotator", session.annotator()},
                           {"scheme", session.resources().scheme},
                           {"open", false},
                           {"sentences", json::array()}};
               if (auto info = session.info()) {
                 out["open"] = true;
                 out.update(OpenJson(*info));
                 out["cursor"] = session.cursor();
                 json sentences = json::array();
                 for (const SentenceSummary &s : session.Summaries()) {
                   sentences.push_back({{"index", s.index},
                                        {"tid", s.tid},
                                        {"text", s.text},
                                        {"concepts", s.concepts},
                                        {"relations", s.relations},
                                        {"dirty", s.dirty}});
                 }
                 out["sentences"] = std::move(sentences);
               }
               return out;
             }));

    http.Post("/cursor", Wrap([this](const httplib::Request &req) {
                json body = ParseBody(req);
                auto it = body.find("index");
                if (it == body.end() || !it->is_number_integer()) {
                  throw BadRequest("field \"index\" must be an integer");
                }
                session.SetCursor(it->get<int>());
                return json{{"cursor", session.cursor()}};
              }));

    http.Get(R"(/sentence/(\d+))", Wrap([this](const httplib::Request &req) {
               Graph g = session.Sentence(Index(req));
               json penman = nullptr;
               try {
                 penman = SerializePenman(g);
               } catch (const Error &) {
                 // Graphs with unwritable names are still editable.
               }
               return json{{"index", Index(req)},
                           {"graph", GraphJson(g)},
                           {"penman", penman},
                           {"warnings",
                            InventoryWarnings(g, session.resources())}};
             }));

    for (bool attribute : {false, true}) {
      const std::string path =
          attribute ? R"(/sentence/(\d+)/attribute)" : R"(/sentence/(\d+)/concept)";
      http.Post(path, Wrap([this, attribute](const httplib::Request &req) {
                  json body = ParseBody(req);
                  return MutationJson(session.AddConcept(
                      Index(req), RequireString(body, "name"),
                      OptionalInts(body, "token_ids"), attribute));
                }));
    }

    http.Post(R"(/sentence/(\d+)/relation)",
              Wrap([this](const httplib::Request &req) {
                json body = ParseBody(req);
                MutationResult r = session.AddRelation(
                    Index(req), RequireString(body, "parent_id"),
                    RequireString(body, "child_id"),
                    RequireString(body, "label"), OptionalBool(body, "referent"),
                    OptionalBool(body, "inverse"));
                json out = MutationJson(r);
                out["referent"] = r.referent;
                out["auto_referent"] = r.auto_referent;
                return out;
              }));

    http.Patch(R"(/sentence/(\d+)/concept/([^/]+))",
               Wrap([this](const httplib::Request &req) {
                 json body = ParseBody(req);
                 return MutationJson(session.UpdateConcept(
                     Index(req), req.matches[2], RequireString(body, "name")));
               }));
    http.Delete(R"(/sentence/(\d+)/concept/([^/]+))",
                Wrap([this](const httplib::Request &req) {
                  return MutationJson(
                      session.DeleteConcept(Index(req), req.matches[2]));
                }));
    http.Patch(R"(/sentence/(\d+)/relation/([^/]+))",
               Wrap([this](const httplib::Request &req) {
                 json body = ParseBody(req);
                 return MutationJson(session.UpdateRelation(
                     Index(req), req.matches[2], RequireString(body, "label")));
               }));
    http.Delete(R"(/sentence/(\d+)/relation/([^/]+))",
                Wrap([this](const httplib::Request &req) {
                  return MutationJson(
                      session.DeleteRelation(Index(req), req.matches[2]));
                }));

    http.Post(R"(/sentence/(\d+)/align)",
              Wrap([this](const httplib::Request &req) {
                json body = ParseBody(req);
                return MutationJson(session.Align(
                    Index(req), RequireString(body, "concept_id"),
                    OptionalInts(body, "token_ids"),
                    OptionalBool(body, "remove")));
              }));

    http.Get("/search", Wrap([this](const httplib::Request &req) {
               int limit = 10;
               if (req.has_param("limit")) {
                 try {
                   limit = std::stoi(req.get_param_value("limit"));
                 } catch (const std::exception &) {
                   throw BadRequest("limit must be an integer");
                 }
               }
               std::string q = req.get_param_value("q");
               json hits = json::array();
               for (const SearchHit &h :
                    SearchConcepts(session.resources(), q, limit)) {
                 hits.push_back({{"name", h.name}, {"description", h.description}});
               }
               return json{{"query", q}, {"hits", hits}};
             }));

    http.Get("/describe", Wrap([this](const httplib::Request &req) {
               std::string name = req.get_param_value("name");
               auto d = FrameDescription(session.resources(), name);
               if (!d) throw NotFoundError("no description for '" + name + "'");
               return json{{"name", name}, {"description", *d}};
             }));

    http.Get("/relations", Wrap([this](const httplib::Request &) {
               json labels = json::array();
               for (const auto &[name, description] :
                    session.resources().relations) {
                 labels.push_back({{"name", name}, {"description", description}});
               }
               return json{{"scheme", session.resources().scheme},
                           {"labels", labels}};
             }));

    http.Post("/save", Wrap([this](const httplib::Request &) {
                return json{{"path", session.Save().string()}};
              }));

    http.Get("/export/penman", Wrap([this](const httplib::Request &) {
               return json(session.ExportPenman());
             }));

    if (!options.static_dir.empty()) {
      http.set_mount_point("/", options.static_dir.string());
    }
  }

  Session &session;
  ServerOptions options;
  httplib::Server http;
  bool bound = false;
};

Server::Server(Session &session, ServerOptions options)
    : impl_(std::make_unique<Impl>(session, std::move(options))) {
  impl_->Routes();
}

Server::~Server() { Stop(); }

int Server::Bind() {
  Impl &m = *impl_;
  int port = m.options.port;
  if (port == 0) {
    port = m.http.bind_to_any_port(m.options.host);
    if (port < 0) throw Error("cannot bind to " + m.options.host);
  } else if (!m.http.bind_to_port(m.options.host, port)) {
    throw Error("cannot bind to " + m.options.host + ":" +
                std::to_string(port) + " (address in use?)");
  }
  m.bound = true;
  return port;
}

void Server::Listen() {
  if (!impl_->bound) throw InvariantError("Listen() requires Bind()");
  impl_->http.listen_after_bind();
}

void Server::Stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace mrtk
