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


// In-memory HTTP sessions hosting explanation games. Every response carries
// public state only: the classifier, the adversary's hidden set and any
// transformation not yet proposed stay on the server.

#ifndef XFAIR_SERVICE_H_
#define XFAIR_SERVICE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "xfair/game.h"
#include "xfair/io.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace xfair {

struct ServiceOptions {
  std::chrono::seconds ttl{3600};
  std::string cors_origin = "*";
  size_t max_body_bytes = 1 << 20;
};

struct ServiceResponse {
  int status = 200;
  Json body;  // Null for 204.
};

class GameService {
 public:
  using Clock = std::chrono::steady_clock;

  explicit GameService(ServiceOptions options = {},
                       std::function<Clock::time_point()> now = Clock::now);

  // 201, 400 on malformed configs, 422 when the game is infeasible.
  ServiceResponse CreateSession(std::string_view body);
  // 200 or 404.
  ServiceResponse GetSession(const std::string& id);
  // 200; 400 on malformed moves; 404; 409 for illegal moves, closed games and
  // a move already in flight on the same session.
  ServiceResponse PostMove(const std::string& id, std::string_view body);
  // Always 204.
  ServiceResponse DeleteSession(const std::string& id);
  ServiceResponse Scenarios() const;
  ServiceResponse Health() const;

  // Drops sessions idle for longer than the TTL. Returns how many went.
  int EvictExpired();
  int size() const;

  const ServiceOptions& options() const { return options_; }

 private:
  struct Session {
    std::mutex move_mu;   // Held for the whole of a move.
    std::mutex state_mu;  // Guards game and updated.
    Game game;
    Clock::time_point created;
    Clock::time_point updated;

    explicit Session(Game g) : game(std::move(g)) {}
  };

  std::shared_ptr<Session> Find(const std::string& id);
  std::string NewId();

  ServiceOptions options_;
  std::function<Clock::time_point()> now_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 id_rng_;  // Guarded by mu_.
};

// Wires the routes, CORS headers and the payload limit onto `server`.
void RegisterRoutes(httplib::Server& server, GameService& service);

// Port from XFAIR_PORT, else 8080.
int ServicePortFromEnv();

// Blocks serving on host:port until the server stops.
absl::Status Serve(const std::string& host, int port,
                   ServiceOptions options = {});

}  // namespace xfair

#endif  // XFAIR_SERVICE_H_
