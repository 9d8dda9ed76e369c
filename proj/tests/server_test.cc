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

#include <gtest/gtest.h>

#include <memory>
#include <thread>

#include "httplib.h"
#include "mrtk/annotation_json.h"
#include "mrtk/errors.h"
#include "nlohmann/json.hpp"
#include "test_util.h"

namespace mrtk {
namespace {

using nlohmann::json;
using testing::DemoGraph;
using testing::MakeTempDir;
using testing::ReadFile;
using testing::WriteFile;

// A session plus a server on a free local port.
class Running {
 public:
  explicit Running(const std::string &scheme = "amr") {
    SessionOptions o;
    o.annotator = "ID";
    o.resources = LoadResources(scheme, std::nullopt);
    session_ = std::make_unique<Session>(o);
    ServerOptions so;
    so.port = 0;
    server_ = std::make_unique<Server>(*session_, so);
    port_ = server_->Bind();
    thread_ = std::thread([this] { server_->Listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  ~Running() {
    server_->Stop();
    thread_.join();
  }

  struct Reply {
    int status;
    json body;
    std::string text;
  };

  Reply Send(const std::string &method, const std::string &path,
             const json &body = nullptr) {
    httplib::Result r;
    const std::string payload = body.is_null() ? "" : body.dump();
    if (method == "GET") {
      r = client_->Get(path);
    } else if (method == "POST") {
      r = client_->Post(path, payload, "application/json");
    } else if (method == "PATCH") {
      r = client_->Patch(path, payload, "application/json");
    } else {
      r = client_->Delete(path);
    }
    if (!r) return {-1, nullptr, ""};
    Reply reply{r->status, nullptr, r->body};
    if (r->get_header_value("Content-Type") == "application/json") {
      reply.body = json::parse(r->body);
    }
    return reply;
  }

  Reply SendRaw(const std::string &path, const std::string &payload) {
    auto r = client_->Post(path, payload, "application/json");
    return {r ? r->status : -1, nullptr, r ? r->body : ""};
  }

  Session &session() { return *session_; }

 private:
  std::unique_ptr<Session> session_;
  std::unique_ptr<Server> server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

Graph GraphOf(const json &j) {
  return GraphFromJson(nlohmann::ordered_json::parse(j.dump()), "graph");
}

std::filesystem::path DemoText() {
  auto dir = MakeTempDir("mrtk_server");
  WriteFile(dir / "demo.txt", std::string(testing::DemoSentence()) + "\n");
  return dir / "demo.txt";
}

TEST(Server, ScriptedDemoSessionSurvivesRestart) {
  const auto text = DemoText();
  Graph saved;
  {
    Running r;
    auto open = r.Send("POST", "/open", {{"path", text.string()}});
    ASSERT_EQ(open.status, 200) << open.text;
    EXPECT_FALSE(open.body["from_claim"]);
    struct Step {
      const char *kind;
      const char *name;
      std::vector<int> tokens;
    };
    for (const Step &s : {Step{"concept", "want-01", {2}},
                          Step{"concept", "boy", {1}},
                          Step{"concept", "girl", {4}},
                          Step{"concept", "believe-01", {6}}}) {
      auto reply = r.Send("POST", std::string("/sentence/0/") + s.kind,
                          {{"name", s.name}, {"token_ids", s.tokens}});
      ASSERT_EQ(reply.status, 200) << reply.text;
    }
    auto align = r.Send("POST", "/sentence/0/align",
                        {{"concept_id", "c1"}, {"token_ids", {7}}});
    ASSERT_EQ(align.status, 200) << align.text;
    EXPECT_EQ(align.body["graph"]["concepts"]["c1"]["token_ids"], json({1, 7}));

    const std::vector<std::tuple<std::string, std::string, std::string>> rels =
        {{"c0", "c1", "ARG0"}, {"c0", "c3", "ARG1"},
         {"c3", "c2", "ARG0"}, {"c3", "c1", "ARG1"}};
    for (size_t i = 0; i < rels.size(); ++i) {
      auto [p, c, l] = rels[i];
      auto reply = r.Send("POST", "/sentence/0/relation",
                          {{"parent_id", p}, {"child_id", c}, {"label", l}});
      ASSERT_EQ(reply.status, 200) << reply.text;
      EXPECT_EQ(reply.body["id"], "r" + std::to_string(i));
      EXPECT_EQ(reply.body["referent"], i == 3);
      EXPECT_EQ(reply.body["auto_referent"], i == 3);
    }
    auto save = r.Send("POST", "/save");
    ASSERT_EQ(save.status, 200) << save.text;
    EXPECT_EQ(save.body["path"], (text.parent_path() / "demo.ID.json").string());
    saved = r.session().Sentence(0);
  }
  Graph expected = DemoGraph();
  expected.last_saved = saved.last_saved;
  EXPECT_EQ(saved, expected);

  Batch on_disk = ReadJson(ReadFile(text.parent_path() / "demo.ID.json"));
  EXPECT_EQ(on_disk.graphs.at(0), saved);

  Running again;
  auto open = again.Send("POST", "/open", {{"path", text.string()}});
  ASSERT_EQ(open.status, 200) << open.text;
  EXPECT_TRUE(open.body["from_claim"]);
  auto sentence = again.Send("GET", "/sentence/0");
  ASSERT_EQ(sentence.status, 200);
  EXPECT_EQ(GraphOf(sentence.body["graph"]), saved);
  EXPECT_NE(sentence.body["penman"].get<std::string>().find("(w / want-01~2"),
            std::string::npos);
}

TEST(Server, BatchSummaryAndCursor) {
  Running r;
  auto closed = r.Send("GET", "/batch");
  EXPECT_EQ(closed.status, 200);
  EXPECT_FALSE(closed.body["open"]);
  EXPECT_EQ(closed.body["scheme"], "amr");
  auto text = DemoText();
  WriteFile(text, "first line\nsecond line here\n");
  r.Send("POST", "/open", {{"path", text.string()}});
  auto batch = r.Send("GET", "/batch");
  ASSERT_EQ(batch.body["sentences"].size(), 2u);
  EXPECT_EQ(batch.body["sentences"][1]["tid"], "demo.2");
  EXPECT_EQ(batch.body["sentences"][1]["text"], "second line here");
  EXPECT_EQ(r.Send("POST", "/cursor", {{"index", 1}}).body["cursor"], 1);
  EXPECT_EQ(r.Send("POST", "/cursor", {{"index", 5}}).status, 404);
}

TEST(Server, ErrorStatuses) {
  Running r;
  EXPECT_EQ(r.Send("GET", "/sentence/0").status, 409);  // nothing open
  EXPECT_EQ(r.Send("POST", "/open", {{"path", "/nonexistent/x.txt"}}).status,
            404);
  auto text = DemoText();
  r.Send("POST", "/open", {{"path", text.string()}});
  EXPECT_EQ(r.Send("GET", "/sentence/3").status, 404);
  EXPECT_EQ(r.Send("GET", "/sentence/99999999999999999999").status, 404);
  EXPECT_EQ(r.Send("POST", "/sentence/0/concept", {{"name", "x"},
                                                   {"token_ids", {99}}})
                .status,
            400);
  EXPECT_EQ(r.Send("POST", "/sentence/0/concept", {{"token_ids", {1}}}).status,
            400);
  EXPECT_EQ(r.SendRaw("/sentence/0/concept", "{not json").status, 400);
  r.Send("POST", "/sentence/0/concept", {{"name", "boy"}, {"token_ids", {1}}});
  auto loop = r.Send("POST", "/sentence/0/relation",
                     {{"parent_id", "c0"}, {"child_id", "c0"}, {"label", "mod"}});
  EXPECT_EQ(loop.status, 409);
  EXPECT_TRUE(loop.body.contains("error"));
  EXPECT_EQ(r.Send("DELETE", "/sentence/0/concept/c9").status, 404);
  EXPECT_EQ(r.Send("PATCH", "/sentence/0/relation/r0", {{"label", "x"}}).status,
            404);
}

TEST(Server, UpdateDeleteAndWarnings) {
  Running r;
  r.Send("POST", "/open", {{"path", DemoText().string()}});
  auto c = r.Send("POST", "/sentence/0/concept",
                  {{"name", "glorp"}, {"token_ids", {1}}});
  ASSERT_EQ(c.status, 200);
  EXPECT_FALSE(c.body["warnings"].empty());
  auto renamed = r.Send("PATCH", "/sentence/0/concept/c0", {{"name", "boy"}});
  ASSERT_EQ(renamed.status, 200) << renamed.text;
  EXPECT_TRUE(renamed.body["warnings"].empty());
  EXPECT_EQ(renamed.body["graph"]["concepts"]["c0"]["name"], "boy");
  auto neg = r.Send("POST", "/sentence/0/attribute", {{"name", "-"}});
  EXPECT_EQ(neg.body["graph"]["concepts"]["c1"]["attribute"], true);
  auto rel = r.Send("POST", "/sentence/0/relation",
                    {{"parent_id", "c0"}, {"child_id", "c1"},
                     {"label", "polarity"}});
  ASSERT_EQ(rel.status, 200) << rel.text;
  auto relabel = r.Send("PATCH", "/sentence/0/relation/r0", {{"label", "mod"}});
  EXPECT_EQ(relabel.body["graph"]["relations"]["r0"]["label"], "mod");
  auto unalign = r.Send("POST", "/sentence/0/align",
                        {{"concept_id", "c0"}, {"token_ids", {1}},
                         {"remove", true}});
  EXPECT_EQ(unalign.body["graph"]["covered_token_ids"], json::array());
  auto del = r.Send("DELETE", "/sentence/0/relation/r0");
  EXPECT_TRUE(del.body["graph"]["relations"].empty());
  auto delc = r.Send("DELETE", "/sentence/0/concept/c0");
  EXPECT_EQ(delc.body["graph"]["concepts"].size(), 1u);
  EXPECT_EQ(delc.body["graph"]["_concept_id"], 2);
}

TEST(Server, SearchDescribeRelationsExport) {
  Running r;
  auto search = r.Send("GET", "/search?q=want");
  ASSERT_EQ(search.status, 200);
  ASSERT_FALSE(search.body["hits"].empty());
  EXPECT_EQ(search.body["hits"][0]["name"], "want-01");
  EXPECT_NE(search.body["hits"][0]["description"].get<std::string>().find(
                "ARG0: wanter"),
            std::string::npos);
  EXPECT_EQ(r.Send("GET", "/search?q=want&limit=0").status, 400);
  EXPECT_EQ(r.Send("GET", "/search?q=want&limit=x").status, 400);
  EXPECT_EQ(r.Send("GET", "/search?q=").body["hits"].size(), 0u);
  EXPECT_EQ(r.Send("GET", "/describe?name=believe-01").status, 200);
  EXPECT_EQ(r.Send("GET", "/describe?name=nope-99").status, 404);
  auto labels = r.Send("GET", "/relations");
  EXPECT_GT(labels.body["labels"].size(), 10u);

  auto dir = MakeTempDir("mrtk_server");
  Batch b;
  b.graphs.push_back(DemoGraph());
  WriteFile(dir / "f.json", WriteJson(b));
  r.Send("POST", "/open", {{"path", (dir / "f.json").string()}});
  auto exported = r.Send("GET", "/export/penman");
  EXPECT_EQ(exported.status, 200);
  EXPECT_NE(exported.text.find(":ARG1 (b2 / believe-01~6"), std::string::npos);
}

TEST(Server, WiserSchemeSearch) {
  Running r("wiser");
  auto search = r.Send("GET", "/search?q=believe");
  ASSERT_FALSE(search.body["hits"].empty());
  EXPECT_EQ(search.body["hits"][0]["name"], "believe");
}

TEST(Server, AutosaveErrorSurfacesOnNextRequest) {
  Running r;
  auto text = DemoText();
  std::filesystem::create_directories(text.parent_path() / "demo.ID.json" / "x");
  r.Send("POST", "/open", {{"path", text.string()}});
  EXPECT_EQ(r.Send("POST", "/sentence/0/concept", {{"name", "boy"}}).status, 200);
  r.session().Flush();
  auto next = r.Send("GET", "/batch");
  EXPECT_EQ(next.status, 500);
  EXPECT_NE(next.body["error"].get<std::string>().find("autosave"),
            std::string::npos);
  EXPECT_EQ(r.Send("GET", "/batch").status, 200);
  EXPECT_EQ(r.session().Sentence(0).concepts.size(), 1u);
}

TEST(Server, PortInUse) {
  SessionOptions o;
  o.annotator = "ID";
  Session s(o);
  ServerOptions so;
  so.port = 0;
  Server first(s, so);
  so.port = first.Bind();
  Server second(s, so);
  EXPECT_THROW(second.Bind(), Error);
}

}  // namespace
}  // namespace mrtk
