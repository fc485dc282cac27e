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

#include <cstdio>
#include <cstdlib>

#include "absl/strings/str_cat.h"
#include "httplib.h"

namespace xfair {
namespace {

ServiceResponse Error(int status, const std::string& message) {
  return {status, Json{{"error", message}}};
}

ServiceResponse Error(int status, const absl::Status& s) {
  return Error(status, std::string(s.message()));
}

Json LegalMovesJson(const Game& game) {
  Json out = Json::array();
  for (MoveKind k : game.LegalMoves()) out.push_back(MoveKindName(k));
  return out;
}

Json SessionJson(const std::string& id, const Game& game) {
  Json out;
  out["id"] = id;
  Json state = PublicStateToJson(game);
  for (auto& [key, value] : state.items()) out[key] = std::move(value);
  return out;
}

}  // namespace

GameService::GameService(ServiceOptions options,
                         std::function<Clock::time_point()> now)
    : options_(std::move(options)), now_(std::move(now)) {
  std::random_device rd;
  id_rng_.seed((uint64_t{rd()} << 32) ^ rd());
}

std::string GameService::NewId() {
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(id_rng_()),
                static_cast<unsigned long long>(id_rng_()));
  return buf;
}

int GameService::EvictExpired() {
  const Clock::time_point now = now_();
  std::lock_guard<std::mutex> lock(mu_);
  int evicted = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    Session& s = *it->second;
    Clock::time_point updated;
    {
      std::lock_guard<std::mutex> state(s.state_mu);
      updated = s.updated;
    }
    if (now - updated > options_.ttl) {
      it = sessions_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

int GameService::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(sessions_.size());
}

std::shared_ptr<GameService::Session> GameService::Find(const std::string& id) {
  EvictExpired();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse GameService::CreateSession(std::string_view body) {
  EvictExpired();
  absl::StatusOr<Json> doc = ParseJson(body);
  if (!doc.ok()) return Error(400, doc.status());
  absl::StatusOr<GameConfig> config = GameConfigFromJson(*doc);
  if (!config.ok()) return Error(400, config.status());
  absl::StatusOr<Game> game = Game::Create(*std::move(config));
  if (!game.ok()) {
    const int code =
        game.status().code() == absl::StatusCode::kFailedPrecondition ? 422 : 400;
    return Error(code, game.status());
  }
  auto session = std::make_shared<Session>(*std::move(game));
  session->created = session->updated = now_();
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    do {
      id = NewId();
    } while (sessions_.count(id) > 0);
    sessions_[id] = session;
  }
  std::lock_guard<std::mutex> state(session->state_mu);
  return {201, SessionJson(id, session->game)};
}

ServiceResponse GameService::GetSession(const std::string& id) {
  std::shared_ptr<Session> session = Find(id);
  if (!session) return Error(404, "unknown session");
  std::lock_guard<std::mutex> state(session->state_mu);
  return {200, SessionJson(id, session->game)};
}

ServiceResponse GameService::PostMove(const std::string& id,
                                      std::string_view body) {
  std::shared_ptr<Session> session = Find(id);
  if (!session) return Error(404, "unknown session");
  std::unique_lock<std::mutex> turn(session->move_mu, std::try_to_lock);
  if (!turn.owns_lock()) return Error(409, "a move is already in flight");
  absl::StatusOr<Json> doc = ParseJson(body);
  if (!doc.ok()) return Error(400, doc.status());
  std::lock_guard<std::mutex> state(session->state_mu);
  Game& game = session->game;
  absl::StatusOr<Move> move =
      MoveFromJson(*doc, game.config().classifier.space());
  if (!move.ok()) return Error(400, move.status());
  if (game.status() != GameStatus::kOpen) {
    ServiceResponse r = Error(409, "game is closed");
    r.body["status"] = StatusName(game.status());
    return r;
  }
  if (absl::Status legal = game.CheckLegal(*move); !legal.ok()) {
    ServiceResponse r = Error(409, legal);
    r.body["legal_moves"] = LegalMovesJson(game);
    return r;
  }
  absl::StatusOr<Reply> reply = game.Play(*move);
  if (!reply.ok()) return Error(500, reply.status());
  session->updated = now_();
  Json out;
  out["reply"] = ReplyToJson(*reply, game.config().classifier);
  Json snapshot = SessionJson(id, game);
  for (auto& [key, value] : snapshot.items()) out[key] = std::move(value);
  return {200, std::move(out)};
}

ServiceResponse GameService::DeleteSession(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  sessions_.erase(id);
  return {204, Json()};
}

ServiceResponse GameService::Scenarios() const {
  Json list = Json::array();
  for (const Scenario& s : BuiltinScenarios()) {
    list.push_back(Json{{"name", s.name},
                        {"description", s.description},
                        {"variant", VariantName(s.config.variant)}});
  }
  return {200, Json{{"scenarios", std::move(list)}}};
}

ServiceResponse GameService::Health() const {
  return {200, Json{{"status", "ok"}, {"sessions", size()}}};
}

void RegisterRoutes(httplib::Server& server, GameService& service) {
  const ServiceOptions& options = service.options();
  server.set_payload_max_length(options.max_body_bytes);
  server.set_default_headers(
      {{"Access-Control-Allow-Origin", options.cors_origin},
       {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
       {"Access-Control-Allow-Headers", "Content-Type"}});
  auto send = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    if (r.status != 204) res.set_content(r.body.dump(), "application/json");
  };
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.Get("/healthz", [&service, send](const httplib::Request&,
                                          httplib::Response& res) {
    send(res, service.Health());
  });
  server.Get("/scenarios", [&service, send](const httplib::Request&,
                                            httplib::Response& res) {
    send(res, service.Scenarios());
  });
  server.Post("/sessions", [&service, send](const httplib::Request& req,
                                            httplib::Response& res) {
    send(res, service.CreateSession(req.body));
  });
  server.Get(R"(/sessions/([0-9a-f]+))",
             [&service, send](const httplib::Request& req,
                              httplib::Response& res) {
               send(res, service.GetSession(req.matches[1]));
             });
  server.Post(R"(/sessions/([0-9a-f]+)/moves)",
              [&service, send](const httplib::Request& req,
                               httplib::Response& res) {
                send(res, service.PostMove(req.matches[1], req.body));
              });
  server.Delete(R"(/sessions/([^/]+))",
                [&service, send](const httplib::Request& req,
                                 httplib::Response& res) {
                  send(res, service.DeleteSession(req.matches[1]));
                });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(
          Json{{"error", httplib::status_message(res.status)}}.dump(),
          "application/json");
    }
  });
}

int ServicePortFromEnv() {
  const char* env = std::getenv("XFAIR_PORT");
  if (env == nullptr) return 8080;
  char* end = nullptr;
  const long port = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || port < 0 || port > 65535) return 8080;
  return static_cast<int>(port);
}

absl::Status Serve(const std::string& host, int port, ServiceOptions options) {
  GameService service(std::move(options));
  httplib::Server server;
  RegisterRoutes(server, service);
  if (!server.listen(host, port)) {
    return absl::UnavailableError(
        absl::StrCat("cannot listen on ", host, ":", port));
  }
  return absl::OkStatus();
}

}  // namespace xfair
