// Copyright 2026 The tcue Authors
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

#ifndef TCUE__SERVER_HPP_
#define TCUE__SERVER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "tcue/harness.hpp"
#include "tcue/scene.hpp"

namespace tcue
{

/// Environment variable that overrides the default bind address.
inline constexpr const char * kBindAddressEnv = "TCUE_BIND_ADDRESS";

struct ServerConfig
{
  std::string address{"127.0.0.1"};
  /// 0 picks an ephemeral port; read it back with SessionServer::port().
  std::uint16_t port{8080};
  std::size_t max_sessions{16};
  /// Where finished sessions persist their gaze trace and run record.
  std::optional<std::filesystem::path> output_dir;
  /// Base config for every session; SessionStart may override fields.
  RunConfig run_defaults;
  int threads{2};
  /// Outbound frames allowed to queue before snapshots are dropped.
  std::size_t max_queued{64};
};

/// Body of GET /scenes: {"scenes": [<scene>...]} in id order.
std::string scenes_json(const SceneLibrary & scenes);

/// HTTP + WebSocket front end. One session per WebSocket connection on
/// /session, ticked by a wall-clock timer at tick_hz.
class SessionServer
{
public:
  SessionServer(SceneLibrary scenes, ServerConfig cfg);
  ~SessionServer();
  SessionServer(const SessionServer &) = delete;
  SessionServer & operator=(const SessionServer &) = delete;

  /// Binds and starts the worker threads. Throws IoError.
  void start();
  /// Bound port, valid after start().
  std::uint16_t port() const;
  void stop();
  /// Blocks until stop() is called from elsewhere.
  void wait();
  std::size_t active_sessions() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tcue

#endif  // TCUE__SERVER_HPP_
