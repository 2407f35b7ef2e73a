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

#include "tcue/cues.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcue/clock.hpp"
#include "tcue/errors.hpp"

namespace tcue
{

std::string_view to_string(MarkerState state)
{
  switch (state) {
    case MarkerState::Pending:
      return "Pending";
    case MarkerState::Active:
      return "Active";
    case MarkerState::Acquired:
      return "Acquired";
  }
  return "Pending";
}

std::string_view to_string(CueShape shape)
{
  switch (shape) {
    case CueShape::Arrow:
      return "Arrow";
    case CueShape::Icon:
      return "Icon";
    case CueShape::Ring:
      return "Ring";
  }
  return "Arrow";
}

std::string_view to_string(CueColor color)
{
  switch (color) {
    case CueColor::Neutral:
      return "Neutral";
    case CueColor::Yellow:
      return "Yellow";
    case CueColor::Red:
      return "Red";
  }
  return "Neutral";
}

std::string_view to_string(AudioKind kind)
{
  return kind == AudioKind::LowTone ? "LowTone" : "UrgentBeep";
}

std::string_view to_string(CueEventKind kind)
{
  switch (kind) {
    case CueEventKind::Activated:
      return "Activated";
    case CueEventKind::UrgencyChanged:
      return "UrgencyChanged";
    case CueEventKind::Acquired:
      return "Acquired";
    case CueEventKind::Deviation:
      return "Deviation";
    case CueEventKind::Replanned:
      return "Replanned";
    case CueEventKind::Completed:
      return "Completed";
  }
  return "Activated";
}

CueStyle style_for(Urgency urgency)
{
  switch (urgency) {
    case Urgency::Low:
      return {CueShape::Arrow, CueColor::Neutral, false, 0.0};
    case Urgency::Medium:
      return {CueShape::Arrow, CueColor::Yellow, true, 0.8};
    case Urgency::High:
      return {CueShape::Arrow, CueColor::Red, true, 0.4};
  }
  return {};
}

AudioEvent make_audio(AudioKind kind, double t, const CueMarker & marker)
{
  AudioEvent ev;
  ev.t = t;
  ev.kind = kind;
  ev.frequency_hz = kind == AudioKind::LowTone ? 440.0 : 880.0;
  ev.duration_s = kind == AudioKind::LowTone ? 0.15 : 0.10;
  ev.pan = std::clamp(2.0 * marker.position.x - 1.0, -1.0, 1.0);
  ev.marker_index = marker.index;
  return ev;
}

void EscalationConfig::validate() const
{
  if (!(t_medium_s > 0.0) || !(t_medium_s < t_high_s) || !std::isfinite(t_high_s)) {
    throw ValidationError("escalation requires 0 < t_medium_s < t_high_s");
  }
  if (!(acquire_radius > 0.0)) {
    throw ValidationError("escalation.acquire_radius must be > 0");
  }
  if (!(dwell_s > 0.0)) {
    throw ValidationError("escalation.dwell_s must be > 0");
  }
  if (!(beep_period_s > 0.0)) {
    throw ValidationError("escalation.beep_period_s must be > 0");
  }
  if (!(deviation_radius > 0.0) || !(deviation_s > 0.0)) {
    throw ValidationError("escalation deviation thresholds must be > 0");
  }
}

void CueOutput::append(CueOutput other)
{
  events.insert(
    events.end(), std::make_move_iterator(other.events.begin()),
    std::make_move_iterator(other.events.end()));
  audio.insert(audio.end(), other.audio.begin(), other.audio.end());
}

CueMachine::CueMachine(
  const PlannedTrajectory & trajectory, Severity severity, double now_t,
  const EscalationConfig & cfg)
: cfg_(cfg),
  severity_(severity),
  initial_urgency_(severity == Severity::High ? Urgency::Medium : Urgency::Low),
  stops_(trajectory.stops),
  last_now_(now_t)
{
  cfg_.validate();
  int index = 0;
  for (const auto & stop : trajectory.stops) {
    CueMarker m;
    m.index = index++;
    m.position = stop.position;
    m.object_id = stop.snapped_object_id;
    markers_.push_back(std::move(m));
  }
  CueMarker hazard;
  hazard.index = index;
  hazard.position = trajectory.terminal;
  hazard.is_hazard = true;
  markers_.push_back(std::move(hazard));

  initial_ = activate(0, now_t);
}

std::optional<int> CueMachine::active_index() const
{
  if (complete_) {
    return std::nullopt;
  }
  return active_;
}

std::optional<ActiveCue> CueMachine::active_cue() const
{
  if (complete_) {
    return std::nullopt;
  }
  const CueMarker & m = markers_[static_cast<std::size_t>(active_)];
  return ActiveCue{m.index, m.position, m.urgency, *m.activated_t, urgency_since_t_};
}

std::vector<Waypoint> CueMachine::unacquired_stops() const
{
  std::vector<Waypoint> out;
  if (complete_) {
    return out;
  }
  for (std::size_t i = static_cast<std::size_t>(active_); i < stops_.size(); ++i) {
    out.push_back(stops_[i]);
  }
  return out;
}

CueOutput CueMachine::activate(int index, double now_t)
{
  active_ = index;
  CueMarker & m = markers_[static_cast<std::size_t>(index)];
  m.state = MarkerState::Active;
  m.urgency = initial_urgency_;
  m.activated_t = now_t;
  urgency_since_t_ = now_t;
  dwell_entry_t_.reset();
  deviation_since_t_.reset();
  beeps_sent_ = 0;

  CueOutput out;
  out.events.push_back(
    CueEvent{now_t, CueEventKind::Activated, m.index, m.position, m.urgency, std::nullopt, {}});
  const auto kind = severity_ == Severity::High ? AudioKind::UrgentBeep : AudioKind::LowTone;
  out.audio.push_back(make_audio(kind, now_t, m));
  return out;
}

void CueMachine::acquire(CueMarker & marker, double now_t, CueOutput & out)
{
  marker.state = MarkerState::Acquired;
  marker.acquired_t = *dwell_entry_t_ + cfg_.dwell_s;
  out.events.push_back(
    CueEvent{now_t, CueEventKind::Acquired, marker.index, marker.position, marker.urgency,
      std::nullopt, {}});
  if (marker.is_hazard) {
    complete_ = true;
    out.events.push_back(
      CueEvent{now_t, CueEventKind::Completed, marker.index, marker.position, marker.urgency,
        std::nullopt, {}});
    return;
  }
  out.append(activate(marker.index + 1, now_t));
}

void CueMachine::escalate(CueMarker & marker, double now_t, CueOutput & out)
{
  const double elapsed = now_t - *marker.activated_t;
  const auto raise = [&](Urgency level) {
      marker.urgency = level;
      urgency_since_t_ = now_t;
      out.events.push_back(
        CueEvent{now_t, CueEventKind::UrgencyChanged, marker.index, marker.position, level,
          std::nullopt, {}});
    };
  if (marker.urgency < Urgency::Medium && reached(elapsed, cfg_.t_medium_s)) {
    raise(Urgency::Medium);
  }
  if (marker.urgency < Urgency::High && reached(elapsed, cfg_.t_high_s)) {
    raise(Urgency::High);
    high_since_t_ = now_t;
    beeps_sent_ = 0;
  }
  if (marker.urgency == Urgency::High) {
    // Beep k is due at high_since + k * period; computed, not accumulated.
    const double due = high_since_t_ + beeps_sent_ * cfg_.beep_period_s;
    if (reached(now_t, due)) {
      out.audio.push_back(make_audio(AudioKind::UrgentBeep, now_t, marker));
      ++beeps_sent_;
    }
  }
}

void CueMachine::watch_deviation(
  const CueMarker & marker, const GazeSample & sample, double now_t, CueOutput & out)
{
  if (!sample.valid) {
    return;
  }
  if (distance(sample.point, marker.position) <= cfg_.deviation_radius) {
    deviation_since_t_.reset();
    return;
  }
  if (!deviation_since_t_) {
    deviation_since_t_ = now_t;
    return;
  }
  if (now_t - *deviation_since_t_ > cfg_.deviation_s + kTimeEpsilon) {
    out.events.push_back(
      CueEvent{now_t, CueEventKind::Deviation, marker.index, marker.position, marker.urgency,
        sample.point, {}});
    deviation_since_t_ = now_t;
  }
}

CueOutput CueMachine::step(const GazeSample & sample, double now_t)
{
  if (now_t < last_now_) {
    throw ClockRegression("cue machine clock went backwards");
  }
  last_now_ = now_t;
  CueOutput out;
  if (complete_) {
    return out;
  }

  CueMarker & marker = markers_[static_cast<std::size_t>(active_)];
  const bool inside =
    sample.valid && distance(sample.point, marker.position) <= cfg_.acquire_radius;
  if (inside) {
    if (!dwell_entry_t_) {
      dwell_entry_t_ = now_t;
    }
    if (reached(now_t - *dwell_entry_t_, cfg_.dwell_s)) {
      acquire(marker, now_t, out);
      return out;
    }
  } else {
    dwell_entry_t_.reset();
  }

  escalate(marker, now_t, out);
  watch_deviation(marker, sample, now_t, out);
  return out;
}

CueOutput CueMachine::apply_replan(const PlannedTrajectory & plan, double now_t)
{
  CueOutput out;
  if (complete_) {
    return out;
  }
  auto current = unacquired_stops();
  if (plan.stops.size() != current.size() ||
    !std::is_permutation(current.begin(), current.end(), plan.stops.begin()))
  {
    throw ValidationError("replan must cover exactly the unacquired stops");
  }

  bool moved = false;
  for (std::size_t k = 0; k < plan.stops.size(); ++k) {
    const auto slot = static_cast<std::size_t>(active_) + k;
    CueMarker & m = markers_[slot];
    if (!(m.position == plan.stops[k].position)) {
      moved = true;
      if (static_cast<int>(slot) == active_) {
        dwell_entry_t_.reset();
        deviation_since_t_.reset();
      }
    }
    m.position = plan.stops[k].position;
    m.object_id = plan.stops[k].snapped_object_id;
    stops_[slot] = plan.stops[k];
  }
  if (moved) {
    CueEvent ev{now_t, CueEventKind::Replanned, active_,
      markers_[static_cast<std::size_t>(active_)].position,
      markers_[static_cast<std::size_t>(active_)].urgency, std::nullopt, {}};
    for (std::size_t i = static_cast<std::size_t>(active_); i < markers_.size(); ++i) {
      ev.positions.push_back(markers_[i].position);
    }
    out.events.push_back(std::move(ev));
  }
  return out;
}

}  // namespace tcue
