// Copyright 2026 The xfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "xfair/service.h"

#include <atomic>
#include <set>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "httplib.h"
#include "xfair/families.h"
#include "xfair/rng.h"

namespace xfair {
namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    RegisterRoutes(server_, service_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  struct Result {
    int status = 0;
    Json body;
    std::string raw;
  };

  Result Call(const std::string& method, const std::string& path,
              const std::string& body = "") {
    httplib::Client client("127.0.0.1", port_);
    httplib::Result r = method == "GET"    ? client.Get(path)
                        : method == "DELETE" ? client.Delete(path)
                                             : client.Post(path, body,
                                                           "application/json");
    if (!r) {
      ADD_FAILURE() << "transport error on " << method << " " << path;
      return {};
    }
    Result out{r->status, Json(), r->body};
    if (!r->body.empty()) out.body = *ParseJson(r->body);
    return out;
  }

  std::string Create(const std::string& config = R"({"scenario": "bankloan4"})") {
    Result r = Call("POST", "/sessions", config);
    EXPECT_EQ(r.status, 201) << r.raw;
    return r.body.value("id", "");
  }

  Result Move(const std::string& id, const std::string& move) {
    return Call("POST", "/sessions/" + id + "/moves", move);
  }

  GameService service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

Json BankConfig(int radius) {
  Json doc;
  doc["model"] = ClassifierToJson(BankLoan4());
  doc["instance"] = Json{{"bits", "0000"}};
  doc["target"] = "grant";
  doc["radius"] = radius;
  doc["variant"] = "challenge";
  doc["conundrum"] = Json{{"kind", "CI"}, {"attended", {"income_high"}}};
  doc["factors"] = Json::array(
      {Json{{"name", "privilege"}, {"set", {{"privileged", true}}}}});
  return doc;
}

TEST_F(ServiceTest, CreateAndFetch) {
  Result r = Call("POST", "/sessions", R"({"scenario": "bankloan4"})");
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["legal_moves"].dump(), R"(["N_REQUEST","CHALLENGE"])");
  EXPECT_EQ(r.body["status"], "open");
  EXPECT_TRUE(r.body["transcript"].empty());
  const std::string id = r.body["id"];
  Result get = Call("GET", "/sessions/" + id);
  EXPECT_EQ(get.status, 200);
  EXPECT_EQ(get.raw, r.raw);

  EXPECT_EQ(Call("POST", "/sessions", BankConfig(4).dump()).status, 201);
  EXPECT_EQ(Call("POST", "/sessions", BankConfig(0).dump()).status, 422);
  EXPECT_EQ(Call("POST", "/sessions", "{oops").status, 400);
  EXPECT_EQ(Call("POST", "/sessions", R"({"scenario": "nope"})").status, 400);
  Json bad = BankConfig(4);
  bad["instance"] = Json{{"bits", "0100"}};  // Already granted.
  EXPECT_EQ(Call("POST", "/sessions", bad.dump()).status, 422);
  bad["instance"] = Json{{"bits", "01"}};
  EXPECT_EQ(Call("POST", "/sessions", bad.dump()).status, 400);
}

TEST_F(ServiceTest, ChallengeWalkthrough) {
  const std::string id = Create();
  Result early = Move(id, R"({"kind": "ACCEPT"})");
  EXPECT_EQ(early.status, 409);
  EXPECT_EQ(early.body["legal_moves"].dump(), R"(["N_REQUEST","CHALLENGE"])");

  Result corrected =
      Move(id, R"({"kind": "CHALLENGE", "literals": {"income_high": false}})");
  ASSERT_EQ(corrected.status, 200) << corrected.raw;
  EXPECT_EQ(corrected.body["reply"]["kind"], "CORRECT");
  EXPECT_EQ(corrected.body["reply"]["delta"].dump(),
            R"({"set":{"privileged":true}})");
  EXPECT_EQ(corrected.body["reply"]["label"], "grant");

  Result won = Move(id, R"({"kind": "ACCEPT"})");
  ASSERT_EQ(won.status, 200);
  EXPECT_EQ(won.body["status"], "won");
  EXPECT_TRUE(won.body["legal_moves"].empty());

  Result closed = Move(id, R"({"kind": "N_REQUEST"})");
  EXPECT_EQ(closed.status, 409);
  EXPECT_EQ(closed.body["status"], "won");
  EXPECT_EQ(Call("GET", "/sessions/" + id).body["transcript"].size(), 2u);
}

TEST_F(ServiceTest, TranscriptAfterThreeMoves) {
  const std::string id = Create();
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(Move(id, R"({"kind": "N_REQUEST"})").status, 200);
  }
  Result get = Call("GET", "/sessions/" + id);
  ASSERT_EQ(get.body["transcript"].size(), 3u);
  for (const Json& entry : get.body["transcript"]) {
    EXPECT_TRUE(entry.contains("move"));
    EXPECT_TRUE(entry.contains("reply"));
    EXPECT_TRUE(entry.contains("counters"));
  }
  EXPECT_EQ(get.body["counters"]["explainee_moves"], 3);
}

TEST_F(ServiceTest, BadMovesAndUnknownSessions) {
  const std::string id = Create();
  EXPECT_EQ(Move(id, "[").status, 400);
  EXPECT_EQ(Move(id, R"({"kind": "DANCE"})").status, 400);
  EXPECT_EQ(Move(id, R"({"kind": "CHALLENGE", "literals": {"salary": true}})")
                .status,
            400);
  EXPECT_EQ(Move(id, R"({"kind": "P_REQUEST", "indices": ["fraud"]})").status,
            409);
  EXPECT_EQ(Move(id, R"({"kind": "CHALLENGE", "literals": {}})").status, 409);
  EXPECT_EQ(Call("GET", "/sessions/ffff").status, 404);
  EXPECT_EQ(Move("ffff", R"({"kind": "N_REQUEST"})").status, 404);
  EXPECT_EQ(Call("DELETE", "/sessions/" + id).status, 204);
  EXPECT_EQ(Call("DELETE", "/sessions/" + id).status, 204);
  EXPECT_EQ(Call("GET", "/sessions/" + id).status, 404);
}

TEST_F(ServiceTest, ScenariosHealthAndCors) {
  Result r = Call("GET", "/scenarios");
  ASSERT_EQ(r.status, 200);
  std::set<std::string> names;
  for (const Json& s : r.body["scenarios"]) {
    names.insert(s["name"]);
    EXPECT_FALSE(s.contains("model"));
    EXPECT_FALSE(s.contains("config"));
  }
  EXPECT_TRUE(names.count("bankloan4"));
  EXPECT_EQ(r.raw.find("repr"), std::string::npos);
  EXPECT_EQ(Call("GET", "/healthz").body["status"], "ok");

  httplib::Client client("127.0.0.1", port_);
  auto get = client.Get("/healthz");
  ASSERT_TRUE(get);
  EXPECT_EQ(get->get_header_value("Access-Control-Allow-Origin"), "*");
  auto preflight = client.Options("/sessions");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
  EXPECT_NE(preflight->get_header_value("Access-Control-Allow-Methods")
                .find("POST"),
            std::string::npos);
}

// Plays random legal moves on every scenario and scans each body for the
// classifier, the hidden set and transformations never proposed.
TEST_F(ServiceTest, InformationHiding) {
  Rng rng(11);
  int scanned = 0;
  for (const Scenario& scenario : BuiltinScenarios()) {
    const Classifier& c = scenario.config.classifier;
    auto all = AppropriateTransformations(c, scenario.config.focal,
                                          scenario.config.target,
                                          scenario.config.radius);
    ASSERT_TRUE(all.ok());
    for (int game = 0; game < 4; ++game) {
      Result r = Call("POST", "/sessions",
                      Json{{"scenario", scenario.name}}.dump());
      ASSERT_EQ(r.status, 201);
      const std::string id = r.body["id"];
      for (int step = 0; step < 12; ++step) {
        Json body = r.body;
        body.erase("factors");
        const std::string text = body.dump();
        EXPECT_EQ(text.find("\"repr\""), std::string::npos);
        EXPECT_EQ(text.find("\"rules\""), std::string::npos);
        EXPECT_EQ(text.find("\"entries\""), std::string::npos);
        EXPECT_EQ(text.find("hidden"), std::string::npos);
        std::set<std::string> proposed;
        for (const Json& p : body["proposals"]) proposed.insert(p["delta"].dump());
        if (body.contains("reply") && body["reply"].contains("delta")) {
          proposed.insert(body["reply"]["delta"].dump());
        }
        for (const Transformation& t : *all) {
          const std::string s = TransformationToJson(t, c.space()).dump();
          if (!proposed.count(s)) {
            EXPECT_EQ(text.find(s), std::string::npos) << s << " leaked";
          }
        }
        ++scanned;
        if (body["legal_moves"].empty()) break;
        const std::string kind =
            body["legal_moves"][rng.Below(body["legal_moves"].size())];
        Json move{{"kind", kind}};
        if (kind == "P_REQUEST") {
          const int f = static_cast<int>(rng.Below(c.width()));
          move["indices"] = Json::array({c.space().name(f)});
        } else if (kind == "CHALLENGE") {
          const int f = static_cast<int>(rng.Below(c.width()));
          move["literals"] = Json{{c.space().name(f), rng.Below(2) == 1}};
        }
        r = Move(id, move.dump());
        ASSERT_EQ(r.status, 200) << r.raw;
      }
    }
  }
  EXPECT_GT(scanned, 50);
}

std::vector<std::string> Script() {
  return {R"({"kind": "N_REQUEST"})",
          R"({"kind": "CHALLENGE", "literals": {"income_high": false}})",
          R"({"kind": "N_REQUEST"})", R"({"kind": "ACCEPT"})"};
}

TEST_F(ServiceTest, SessionIsolation) {
  const std::string solo = Create();
  std::vector<std::string> expected;
  for (const std::string& m : Script()) expected.push_back(Move(solo, m).raw);

  constexpr int kClients = 8;
  std::vector<std::string> ids;
  for (int i = 0; i < kClients; ++i) ids.push_back(Create());
  std::vector<std::vector<std::string>> got(kClients);
  std::vector<std::thread> threads;
  for (int i = 0; i < kClients; ++i) {
    threads.emplace_back([&, i] {
      for (const std::string& m : Script()) {
        got[i].push_back(Move(ids[i], m).raw);
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (int i = 0; i < kClients; ++i) {
    ASSERT_EQ(got[i].size(), expected.size());
    for (size_t j = 0; j < expected.size(); ++j) {
      Json a = *ParseJson(got[i][j]);
      Json b = *ParseJson(expected[j]);
      a.erase("id");
      b.erase("id");
      EXPECT_EQ(a, b) << "client " << i << " move " << j;
    }
  }
}

TEST_F(ServiceTest, ConcurrentMovesOnOneSessionAreSerialized) {
  const std::string id = Create();
  std::atomic<int> ok{0};
  std::atomic<int> busy{0};
  std::atomic<int> other{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      const int status = Move(id, R"({"kind": "N_REQUEST"})").status;
      (status == 200 ? ok : status == 409 ? busy : other)++;
    });
  }
  for (std::thread& t : threads) t.join();
  EXPECT_EQ(other.load(), 0);
  EXPECT_EQ(ok + busy, 8);
  Result get = Call("GET", "/sessions/" + id);
  EXPECT_EQ(static_cast<int>(get.body["transcript"].size()), ok.load());
}

TEST(GameServiceTest, IdleSessionsExpire) {
  GameService::Clock::time_point now{};
  ServiceOptions options;
  options.ttl = std::chrono::seconds(60);
  GameService service(options, [&now] { return now; });
  ServiceResponse a = service.CreateSession(R"({"scenario": "bankloan4"})");
  ASSERT_EQ(a.status, 201);
  const std::string id = a.body["id"];
  now += std::chrono::seconds(50);
  EXPECT_EQ(service.PostMove(id, R"({"kind": "N_REQUEST"})").status, 200);
  now += std::chrono::seconds(50);
  EXPECT_EQ(service.GetSession(id).status, 200);
  now += std::chrono::seconds(11);
  EXPECT_EQ(service.GetSession(id).status, 404);
  EXPECT_EQ(service.size(), 0);
}

TEST(GameServiceTest, IdsAreDistinct) {
  GameService service;
  std::set<std::string> ids;
  for (int i = 0; i < 50; ++i) {
    ids.insert(service.CreateSession(R"({"scenario": "scaling-k2"})")
                   .body["id"]
                   .get<std::string>());
  }
  EXPECT_EQ(ids.size(), 50u);
}

}  // namespace
}  // namespace xfair
