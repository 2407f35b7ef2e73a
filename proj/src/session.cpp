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

#include "tcue/session.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "json_util.hpp"
#include "tcue/records.hpp"

namespace tcue
{

using detail::Json;

namespace
{

constexpr MessageKind kAllKinds[] = {
  MessageKind::SessionStart, MessageKind::StateSnapshot, MessageKind::GazeInput,
  MessageKind::CueEventMsg, MessageKind::AudioEventMsg, MessageKind::SessionEnd,
  MessageKind::Error};

}  // namespace

std::string_view to_string(MessageKind kind)
{
  switch (kind) {
    case MessageKind::SessionStart:
      return "SessionStart";
    case MessageKind::StateSnapshot:
      return "StateSnapshot";
    case MessageKind::GazeInput:
      return "GazeInput";
    case MessageKind::CueEventMsg:
      return "CueEventMsg";
    case MessageKind::AudioEventMsg:
      return "AudioEventMsg";
    case MessageKind::SessionEnd:
      return "SessionEnd";
    case MessageKind::Error:
      return "Error";
  }
  return "Error";
}

std::string_view to_string(SessionPhase phase)
{
  switch (phase) {
    case SessionPhase::Waiting:
      return "Waiting";
    case SessionPhase::Running:
      return "Running";
    case SessionPhase::Complete:
      return "Complete";
    case SessionPhase::Closed:
      return "Closed";
  }
  return "Closed";
}

std::string encode_message(const SessionMessage & msg)
{
  const Json j = {{"kind", std::string(to_string(msg.kind))}, {"seq", msg.seq},
    {"payload", msg.payload}};
  return j.dump();
}

SessionMessage decode_message(std::string_view text)
{
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error &) {
    throw MalformedMessage("message is not valid JSON");
  }
  if (!j.is_object()) {
    throw MalformedMessage("message must be a JSON object");
  }
  const auto kind = j.find("kind");
  const auto seq = j.find("seq");
  if (kind == j.end() || !kind->is_string()) {
    throw MalformedMessage("message.kind must be a string");
  }
  if (seq == j.end() || !seq->is_number_unsigned()) {
    throw MalformedMessage("message.seq must be a non-negative integer");
  }
  SessionMessage msg;
  const auto name = kind->get<std::string>();
  const auto match = std::find_if(
    std::begin(kAllKinds), std::end(kAllKinds), [&](MessageKind k) {return to_string(k) == name;});
  if (match == std::end(kAllKinds)) {
    throw MalformedMessage("unknown message kind '" + name + "'");
  }
  msg.kind = *match;
  msg.seq = seq->get<std::uint64_t>();
  if (const auto payload = j.find("payload"); payload != j.end()) {
    if (!payload->is_object()) {
      throw MalformedMessage("message.payload must be an object");
    }
    msg.payload = *payload;
  }
  return msg;
}

Json error_payload(std::string_view code, std::string_view text)
{
  return {{"code", std::string(code)}, {"message", std::string(text)}};
}

GazeInput gaze_input_from_json(const Json & payload)
{
  const auto number = [&](const char * key) {
      const auto it = payload.find(key);
      if (it == payload.end() || !it->is_number()) {
        throw MalformedMessage(std::string("GazeInput.") + key + " must be a number");
      }
      return it->get<double>();
    };
  GazeInput in;
  in.t = number("t");
  in.point = {number("x"), number("y")};
  if (const auto it = payload.find("valid"); it != payload.end()) {
    if (!it->is_boolean()) {
      throw MalformedMessage("GazeInput.valid must be a boolean");
    }
    in.valid = it->get<bool>();
  }
  if (!std::isfinite(in.t) || !std::isfinite(in.point.x) || !std::isfinite(in.point.y) ||
    !in_unit_square(in.point))
  {
    throw MalformedMessage("GazeInput coordinates out of range");
  }
  return in;
}

SessionEngine::SessionEngine(const SceneSpec & scene, RunConfig cfg, std::string session_id)
: scene_(scene),
  cfg_([&] {
      cfg.scene_id = scene.id;
      cfg.mode = RunMode::Guided;
      return cfg;
    }()),
  id_(std::move(session_id)),
  engine_(scene_, cfg_)
{
}

std::int64_t SessionEngine::snapshot_every() const
{
  return std::max<std::int64_t>(1, cfg_.tick_hz / 10);
}

SessionMessage SessionEngine::next(MessageKind kind, Json payload)
{
  return SessionMessage{kind, seq_++, std::move(payload)};
}

Json SessionEngine::markers_json() const
{
  Json markers = Json::array();
  if (const CueMachine * cues = engine_.cues()) {
    for (const auto & m : cues->markers()) {
      markers.push_back(to_json(m));
    }
    return markers;
  }
  // Before the takeover request: the planned slots, all Pending.
  const auto & wps = engine_.waypoints();
  for (std::size_t i = 0; i <= wps.size(); ++i) {
    CueMarker m;
    m.index = static_cast<int>(i);
    if (i < wps.size()) {
      m.position = wps[i].position;
      m.object_id = wps[i].snapped_object_id;
    } else {
      m.position = scene_.hazard.position;
      m.is_hazard = true;
    }
    markers.push_back(to_json(m));
  }
  return markers;
}

SessionMessage SessionEngine::start_ack()
{
  return next(
    MessageKind::SessionStart,
    {{"schema_version", kSessionSchemaVersion},
      {"session_id", id_},
      {"scene", Json::parse(save_scene(scene_))},
      {"markers", markers_json()},
      {"tick_hz", cfg_.tick_hz},
      {"warmup_s", cfg_.warmup_s},
      {"config", to_json(cfg_)}});
}

void SessionEngine::ingest_gaze(const GazeInput & input)
{
  if (phase_ == SessionPhase::Closed) {
    throw SessionClosed("session " + id_ + " is closed");
  }
  if (!std::isfinite(input.point.x) || !std::isfinite(input.point.y) ||
    !in_unit_square(input.point))
  {
    throw MalformedMessage("GazeInput coordinates out of range");
  }
  latest_ = input;
  latest_tick_ = engine_.tick_index();
  if (phase_ == SessionPhase::Waiting) {
    phase_ = SessionPhase::Running;
  }
}

SessionMessage SessionEngine::snapshot()
{
  Json gaze = nullptr;
  if (!engine_.gaze().empty()) {
    const auto & g = engine_.gaze().back();
    gaze = {{"x", g.point.x}, {"y", g.point.y}, {"valid", g.valid}};
  }
  return next(
    MessageKind::StateSnapshot,
    {{"tick", engine_.tick_index()},
      {"t", engine_.now()},
      {"phase", std::string(to_string(phase_))},
      {"tor_issued", engine_.tor_issued()},
      {"markers", markers_json()},
      {"gaze", std::move(gaze)}});
}

std::vector<SessionMessage> SessionEngine::tick()
{
  std::vector<SessionMessage> out;
  if (phase_ != SessionPhase::Running || engine_.finished()) {
    return out;
  }

  engine_.begin_tick();
  const double now = engine_.now();
  GazeSample sample{now, scene_.distraction_point, false};
  if (latest_) {
    sample.point = latest_->point;
    sample.valid = latest_->valid && engine_.tick_index() - latest_tick_ <= kStaleTicks;
  }
  engine_.end_tick(sample);

  const auto & events = engine_.events();
  for (std::size_t i = engine_.tick_events_begin(); i < events.size(); ++i) {
    const auto kind = std::holds_alternative<CueEvent>(events[i]) ? MessageKind::CueEventMsg :
      MessageKind::AudioEventMsg;
    out.push_back(next(kind, to_json(events[i], cfg_.tick_hz)));
  }
  if (engine_.finished()) {
    phase_ = SessionPhase::Complete;
  }
  // Snapshot cadence counts completed ticks; the final state always goes out.
  if (engine_.tick_index() % snapshot_every() == 0 || phase_ == SessionPhase::Complete) {
    out.push_back(snapshot());
  }
  return out;
}

SessionMessage SessionEngine::close()
{
  if (phase_ == SessionPhase::Closed) {
    throw SessionClosed("session " + id_ + " is already closed");
  }
  phase_ = SessionPhase::Closed;
  return next(
    MessageKind::SessionEnd,
    {{"metrics", to_json(engine_.metrics())},
      {"replay_token", id_},
      {"ticks", engine_.tick_index()}});
}

RunResult SessionEngine::result() const
{
  RunResult r;
  r.config = cfg_;
  r.metrics = engine_.metrics();
  r.events = engine_.events();
  r.gaze = engine_.gaze();
  r.waypoints = engine_.waypoints();
  r.plan = engine_.plan();
  return r;
}

void persist_session(
  const RunResult & result, const std::string & token, const std::filesystem::path & dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create session output directory " + dir.string());
  }
  save_gaze_trace(result.gaze, dir / (token + ".gaze.csv"));
  export_results(std::span(&result, 1), dir / (token + ".jsonl"), dir / (token + ".csv"));
}

}  // namespace tcue
