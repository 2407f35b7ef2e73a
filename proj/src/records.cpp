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

#include "tcue/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "tcue/errors.hpp"

namespace tcue
{

using detail::Json;
using detail::point_json;

namespace
{

Json optional_number(const std::optional<double> & v)
{
  return v ? Json(*v) : Json(nullptr);
}

std::int64_t tick_of(double t, int tick_hz)
{
  return static_cast<std::int64_t>(std::llround(t * tick_hz));
}

}  // namespace

Json to_json(const RunConfig & cfg)
{
  const auto & wp = cfg.saliency.waypoints;
  return {
    {"scene_id", cfg.scene_id},
    {"mode", std::string(to_string(cfg.mode))},
    {"seed", cfg.seed},
    {"tick_hz", cfg.tick_hz},
    {"warmup_s", cfg.warmup_s},
    {"break_radius", cfg.break_radius},
    {"agent",
      {{"kind", std::string(to_string(cfg.agent.kind))},
        {"reaction_latency_s", cfg.agent.reaction_latency_s},
        {"saccade_speed", cfg.agent.saccade_speed},
        {"landing_noise_sigma", cfg.agent.landing_noise_sigma},
        {"seed", cfg.agent.seed}}},
    {"escalation",
      {{"t_medium_s", cfg.escalation.t_medium_s},
        {"t_high_s", cfg.escalation.t_high_s},
        {"acquire_radius", cfg.escalation.acquire_radius},
        {"dwell_s", cfg.escalation.dwell_s},
        {"beep_period_s", cfg.escalation.beep_period_s},
        {"deviation_radius", cfg.escalation.deviation_radius},
        {"deviation_s", cfg.escalation.deviation_s}}},
    {"saliency",
      {{"grid", {{"width", cfg.saliency.grid.width}, {"height", cfg.saliency.grid.height}}},
        {"sigma_h", cfg.saliency.sigma_h},
        {"waypoints",
          {{"tau", wp.tau},
            {"min_sep", wp.min_sep},
            {"k_max", wp.k_max},
            {"hazard_exclusion", wp.hazard_exclusion},
            {"snap_radius", wp.snap_radius}}}}},
    {"planner", {{"max_exact", cfg.planner.max_exact}}},
    {"fixation",
      {{"min_fix_duration_s", cfg.fixation.min_fix_duration_s},
        {"disp_threshold", cfg.fixation.disp_threshold}}},
    {"target_fixation",
      {{"target_fix_duration_s", cfg.target_fixation.target_fix_duration_s},
        {"radius", cfg.target_fixation.radius}}}};
}

Json to_json(const RunMetrics & m)
{
  Json fix = nullptr;
  if (m.initial_fixation) {
    fix = {
      {"centroid", point_json(m.initial_fixation->centroid)},
      {"start_t", m.initial_fixation->start_t},
      {"duration_s", m.initial_fixation->duration_s},
      {"dispersion", m.initial_fixation->dispersion}};
  }
  return {
    {"t_break_s", optional_number(m.t_break_s)},
    {"t_hazard_s", optional_number(m.t_hazard_s)},
    {"waypoints_acquired", m.waypoints_acquired},
    {"planned_stops", m.planned_stops},
    {"escalations", {{"Medium", m.escalations.medium}, {"High", m.escalations.high}}},
    {"gaze_path_length", m.gaze_path_length},
    {"planned_length", m.planned_length},
    {"completed", m.completed},
    {"initial_fixation", std::move(fix)},
    {"initial_focus_on_distraction", m.initial_focus_on_distraction},
    {"target_fixation", m.target_fixation}};
}

Json to_json(const PlannedTrajectory & plan)
{
  Json stops = Json::array();
  for (const auto & s : plan.stops) {
    stops.push_back(
      {{"position", point_json(s.position)},
        {"score", s.score},
        {"object_id", s.snapped_object_id ? Json(*s.snapped_object_id) : Json(nullptr)}});
  }
  return {
    {"start", point_json(plan.start)},
    {"stops", std::move(stops)},
    {"terminal", point_json(plan.terminal)},
    {"total_length", plan.total_length}};
}

Json to_json(const CueMarker & m)
{
  const CueStyle style = style_for(m.urgency);
  return {
    {"index", m.index},
    {"position", point_json(m.position)},
    {"state", std::string(to_string(m.state))},
    {"urgency", std::string(to_string(m.urgency))},
    {"is_hazard", m.is_hazard},
    {"object_id", m.object_id ? Json(*m.object_id) : Json(nullptr)},
    {"activated_t", optional_number(m.activated_t)},
    {"acquired_t", optional_number(m.acquired_t)},
    {"style",
      {{"shape", std::string(to_string(style.shape))},
        {"color", std::string(to_string(style.color))},
        {"pulsing", style.pulsing},
        {"pulse_period_s", style.pulse_period_s}}}};
}

Json to_json(const CueEvent & ev, int tick_hz)
{
  Json j = {
    {"type", "cue"},
    {"t", ev.t},
    {"tick", tick_of(ev.t, tick_hz)},
    {"kind", std::string(to_string(ev.kind))},
    {"marker", ev.marker_index},
    {"position", point_json(ev.position)},
    {"urgency", std::string(to_string(ev.urgency))}};
  if (ev.gaze) {
    j["gaze"] = point_json(*ev.gaze);
  }
  if (!ev.positions.empty()) {
    Json ps = Json::array();
    for (const auto & p : ev.positions) {
      ps.push_back(point_json(p));
    }
    j["positions"] = std::move(ps);
  }
  return j;
}

Json to_json(const AudioEvent & ev, int tick_hz)
{
  return {
    {"type", "audio"},
    {"t", ev.t},
    {"tick", tick_of(ev.t, tick_hz)},
    {"kind", std::string(to_string(ev.kind))},
    {"frequency_hz", ev.frequency_hz},
    {"duration_s", ev.duration_s},
    {"pan", ev.pan},
    {"marker", ev.marker_index}};
}

Json to_json(const TraceEvent & ev, int tick_hz)
{
  return std::visit([tick_hz](const auto & e) {return to_json(e, tick_hz);}, ev);
}

namespace
{

using detail::as_bool;
using detail::as_int;
using detail::as_number;
using detail::as_string;
using detail::as_uint;

void reject_unknown(const Json & obj, std::initializer_list<const char *> known,
  const std::string & where)
{
  if (!obj.is_object()) {
    throw ParseError((where.empty() ? std::string("config") : where) + " must be an object");
  }
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto & [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError("unknown config key " + (where.empty() ? key : where + "." + key));
    }
  }
}

void read(const Json & obj, const char * key, double & out, const std::string & where)
{
  if (const auto it = obj.find(key); it != obj.end()) {
    out = as_number(*it, where + "." + key);
  }
}

void read(const Json & obj, const char * key, int & out, const std::string & where)
{
  if (const auto it = obj.find(key); it != obj.end()) {
    out = static_cast<int>(as_int(*it, where + "." + key));
  }
}

}  // namespace

RunConfig run_config_from_json(const Json & doc, RunConfig cfg)
{
  reject_unknown(
    doc,
    {"scene_id", "mode", "seed", "tick_hz", "warmup_s", "break_radius", "agent", "escalation",
      "saliency", "planner", "fixation", "target_fixation"},
    "");
  if (const auto it = doc.find("scene_id"); it != doc.end()) {
    cfg.scene_id = as_string(*it, "scene_id");
  }
  if (const auto it = doc.find("mode"); it != doc.end()) {
    cfg.mode = run_mode_from_string(as_string(*it, "mode"));
  }
  if (const auto it = doc.find("seed"); it != doc.end()) {
    cfg.seed = as_uint(*it, "seed");
  }
  read(doc, "tick_hz", cfg.tick_hz, "");
  read(doc, "warmup_s", cfg.warmup_s, "");
  read(doc, "break_radius", cfg.break_radius, "");

  if (const auto it = doc.find("agent"); it != doc.end()) {
    const Json & a = *it;
    reject_unknown(
      a, {"kind", "reaction_latency_s", "saccade_speed", "landing_noise_sigma", "seed"}, "agent");
    if (const auto k = a.find("kind"); k != a.end()) {
      const auto seed = cfg.agent.seed;
      cfg.agent = GazeAgentConfig::defaults_for(agent_kind_from_string(as_string(*k, "agent.kind")));
      cfg.agent.seed = seed;
    }
    read(a, "reaction_latency_s", cfg.agent.reaction_latency_s, "agent");
    read(a, "saccade_speed", cfg.agent.saccade_speed, "agent");
    read(a, "landing_noise_sigma", cfg.agent.landing_noise_sigma, "agent");
    if (const auto s = a.find("seed"); s != a.end()) {
      cfg.agent.seed = as_uint(*s, "agent.seed");
    }
  }

  if (const auto it = doc.find("escalation"); it != doc.end()) {
    const Json & e = *it;
    reject_unknown(
      e,
      {"t_medium_s", "t_high_s", "acquire_radius", "dwell_s", "beep_period_s", "deviation_radius",
        "deviation_s"},
      "escalation");
    read(e, "t_medium_s", cfg.escalation.t_medium_s, "escalation");
    read(e, "t_high_s", cfg.escalation.t_high_s, "escalation");
    read(e, "acquire_radius", cfg.escalation.acquire_radius, "escalation");
    read(e, "dwell_s", cfg.escalation.dwell_s, "escalation");
    read(e, "beep_period_s", cfg.escalation.beep_period_s, "escalation");
    read(e, "deviation_radius", cfg.escalation.deviation_radius, "escalation");
    read(e, "deviation_s", cfg.escalation.deviation_s, "escalation");
  }

  if (const auto it = doc.find("saliency"); it != doc.end()) {
    const Json & s = *it;
    reject_unknown(s, {"grid", "sigma_h", "waypoints"}, "saliency");
    if (const auto g = s.find("grid"); g != s.end()) {
      reject_unknown(*g, {"width", "height"}, "saliency.grid");
      read(*g, "width", cfg.saliency.grid.width, "saliency.grid");
      read(*g, "height", cfg.saliency.grid.height, "saliency.grid");
    }
    read(s, "sigma_h", cfg.saliency.sigma_h, "saliency");
    if (const auto w = s.find("waypoints"); w != s.end()) {
      reject_unknown(
        *w, {"tau", "min_sep", "k_max", "hazard_exclusion", "snap_radius"}, "saliency.waypoints");
      auto & wp = cfg.saliency.waypoints;
      read(*w, "tau", wp.tau, "saliency.waypoints");
      read(*w, "min_sep", wp.min_sep, "saliency.waypoints");
      read(*w, "k_max", wp.k_max, "saliency.waypoints");
      read(*w, "hazard_exclusion", wp.hazard_exclusion, "saliency.waypoints");
      read(*w, "snap_radius", wp.snap_radius, "saliency.waypoints");
    }
  }

  if (const auto it = doc.find("planner"); it != doc.end()) {
    reject_unknown(*it, {"max_exact"}, "planner");
    read(*it, "max_exact", cfg.planner.max_exact, "planner");
  }
  if (const auto it = doc.find("fixation"); it != doc.end()) {
    reject_unknown(*it, {"min_fix_duration_s", "disp_threshold"}, "fixation");
    read(*it, "min_fix_duration_s", cfg.fixation.min_fix_duration_s, "fixation");
    read(*it, "disp_threshold", cfg.fixation.disp_threshold, "fixation");
  }
  if (const auto it = doc.find("target_fixation"); it != doc.end()) {
    reject_unknown(*it, {"target_fix_duration_s", "radius"}, "target_fixation");
    read(*it, "target_fix_duration_s", cfg.target_fixation.target_fix_duration_s,
      "target_fixation");
    read(*it, "radius", cfg.target_fixation.radius, "target_fixation");
  }

  cfg.validate();
  return cfg;
}

RunConfig parse_run_config(std::string_view text, RunConfig defaults)
{
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error & e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  return run_config_from_json(doc, std::move(defaults));
}

RunConfig load_run_config(const std::filesystem::path & path, RunConfig defaults)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), std::move(defaults));
}

std::string run_record_line(const RunResult & run)
{
  Json events = Json::array();
  for (const auto & ev : run.events) {
    events.push_back(to_json(ev, run.config.tick_hz));
  }
  const Json record = {
    {"schema_version", kRunRecordSchemaVersion},
    {"config", to_json(run.config)},
    {"metrics", to_json(run.metrics)},
    {"plan", run.plan ? to_json(*run.plan) : Json(nullptr)},
    {"events", std::move(events)}};
  return record.dump();
}

const std::vector<std::string> & metrics_csv_columns()
{
  static const std::vector<std::string> columns = {
    "schema_version", "scene_id", "mode", "agent", "seed", "tick_hz", "completed", "t_break_s",
    "t_hazard_s", "waypoints_acquired", "planned_stops", "escalations_medium",
    "escalations_high", "gaze_path_length", "planned_length"};
  return columns;
}

namespace
{

std::string num(double v)
{
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string num(const std::optional<double> & v)
{
  return v ? num(*v) : std::string();
}

/// Scene ids are free text; quote when needed.
std::string csv_field(const std::string & s)
{
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string metrics_csv(std::span<const RunResult> runs)
{
  std::string out;
  const auto & cols = metrics_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out += (i ? "," : "") + cols[i];
  }
  out += '\n';
  for (const auto & run : runs) {
    const auto & c = run.config;
    const auto & m = run.metrics;
    const std::vector<std::string> row = {
      std::to_string(kRunRecordSchemaVersion),
      csv_field(c.scene_id),
      std::string(to_string(c.mode)),
      std::string(to_string(c.agent.kind)),
      std::to_string(c.seed),
      std::to_string(c.tick_hz),
      m.completed ? "true" : "false",
      num(m.t_break_s),
      num(m.t_hazard_s),
      std::to_string(m.waypoints_acquired),
      std::to_string(m.planned_stops),
      std::to_string(m.escalations.medium),
      std::to_string(m.escalations.high),
      num(m.gaze_path_length),
      num(m.planned_length)};
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + row[i];
    }
    out += '\n';
  }
  return out;
}

void export_results(
  std::span<const RunResult> runs, const std::filesystem::path & records,
  const std::filesystem::path & csv)
{
  std::ofstream rec(records, std::ios::binary | std::ios::trunc);
  if (!rec) {
    throw IoError("cannot write run records " + records.string());
  }
  for (const auto & run : runs) {
    rec << run_record_line(run) << '\n';
  }
  std::ofstream table(csv, std::ios::binary | std::ios::trunc);
  if (!table) {
    throw IoError("cannot write metrics csv " + csv.string());
  }
  table << metrics_csv(runs);
  if (!rec || !table) {
    throw IoError("failed writing results");
  }
}

}  // namespace tcue
