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

#ifndef TCUE__SESSION_HPP_
#define TCUE__SESSION_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tcue/errors.hpp"
#include "tcue/harness.hpp"

namespace tcue
{

inline constexpr int kSessionSchemaVersion = 1;

class MalformedMessage : public InputError
{
public:
  using InputError::InputError;
};

class SessionClosed : public Error
{
public:
  using Error::Error;
};

class CapacityExceeded : public Error
{
public:
  using Error::Error;
};

enum class MessageKind
{
  SessionStart,
  StateSnapshot,
  GazeInput,
  CueEventMsg,
  AudioEventMsg,
  SessionEnd,
  Error,
};

std::string_view to_string(MessageKind kind);

/// One framed message: {"kind": ..., "seq": n, "payload": {...}}.
struct SessionMessage
{
  MessageKind kind{MessageKind::Error};
  std::uint64_t seq{0};
  nlohmann::json payload = nlohmann::json::object();
};

std::string encode_message(const SessionMessage & msg);
/// Throws MalformedMessage.
SessionMessage decode_message(std::string_view text);

/// Builds an Error message body: {"code": code, "message": text}.
nlohmann::json error_payload(std::string_view code, std::string_view text);

struct GazeInput
{
  double t{0.0};
  Point2 point;
  bool valid{true};
};

/// Throws MalformedMessage for missing fields or coordinates outside [0,1].
GazeInput gaze_input_from_json(const nlohmann::json & payload);

enum class SessionPhase { Waiting, Running, Complete, Closed };

std::string_view to_string(SessionPhase phase);

/// Engine side of one live session, independent of transport and wall
/// clock. The owner calls tick() at tick_hz; each call consumes the most
/// recent gaze input (invalid if older than kStaleTicks ticks or absent)
/// and returns the messages to push, in order.
class SessionEngine
{
public:
  static constexpr std::int64_t kStaleTicks = 3;

  SessionEngine(const SceneSpec & scene, RunConfig cfg, std::string session_id);

  /// SessionStart acknowledgment: schema, scene, markers (all Pending) and
  /// tick rate.
  SessionMessage start_ack();

  /// Throws SessionClosed once closed, MalformedMessage on bad coordinates
  /// (the session stays usable). The first input moves Waiting to Running.
  void ingest_gaze(const GazeInput & input);

  /// No-op unless Running. Moves to Complete when the run finishes.
  std::vector<SessionMessage> tick();

  /// SessionEnd with final metrics and the replay token. Throws
  /// SessionClosed when called twice.
  SessionMessage close();

  SessionPhase phase() const { return phase_; }
  const std::string & id() const { return id_; }
  /// Token under which the trace is persisted; equals the session id.
  const std::string & replay_token() const { return id_; }
  const TakeoverEngine & engine() const { return engine_; }
  int tick_hz() const { return cfg_.tick_hz; }
  /// Snapshot cadence in ticks (10 Hz).
  std::int64_t snapshot_every() const;

  /// Config, metrics, events and gaze as a harness result, for export.
  RunResult result() const;

  SessionMessage snapshot();

private:
  SessionMessage next(MessageKind kind, nlohmann::json payload);
  nlohmann::json markers_json() const;

  SceneSpec scene_;
  RunConfig cfg_;
  std::string id_;
  TakeoverEngine engine_;
  SessionPhase phase_{SessionPhase::Waiting};
  std::uint64_t seq_{0};

  std::optional<GazeInput> latest_;
  std::int64_t latest_tick_{0};
};

/// Writes `<token>.gaze.csv` and `<token>.jsonl` (run record + metrics csv
/// row file `<token>.csv`) into `dir`. Throws IoError.
void persist_session(const RunResult & result, const std::string & token,
  const std::filesystem::path & dir);

}  // namespace tcue

#endif  // TCUE__SESSION_HPP_
