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

#include "tcue/agent.hpp"

#include <cmath>
#include <string>

#include "tcue/clock.hpp"
#include "tcue/errors.hpp"

namespace tcue
{

std::string_view to_string(AgentKind kind)
{
  switch (kind) {
    case AgentKind::Compliant:
      return "Compliant";
    case AgentKind::Distracted:
      return "Distracted";
    case AgentKind::NonCompliant:
      return "NonCompliant";
    case AgentKind::RandomScan:
      return "RandomScan";
  }
  return "Compliant";
}

AgentKind agent_kind_from_string(std::string_view text)
{
  for (const auto kind :
    {AgentKind::Compliant, AgentKind::Distracted, AgentKind::NonCompliant,
      AgentKind::RandomScan})
  {
    if (text == to_string(kind)) {
      return kind;
    }
  }
  throw ValidationError("unknown agent kind '" + std::string(text) + "'");
}

GazeAgentConfig GazeAgentConfig::defaults_for(AgentKind kind)
{
  GazeAgentConfig cfg;
  cfg.kind = kind;
  if (kind == AgentKind::Distracted) {
    cfg.reaction_latency_s = 0.8;
  }
  return cfg;
}

void GazeAgentConfig::validate() const
{
  if (!std::isfinite(reaction_latency_s) || reaction_latency_s < 0.0) {
    throw ValidationError("agent.reaction_latency_s must be >= 0");
  }
  if (!std::isfinite(saccade_speed) || saccade_speed <= 0.0) {
    throw ValidationError("agent.saccade_speed must be > 0");
  }
  if (!std::isfinite(landing_noise_sigma) || landing_noise_sigma < 0.0) {
    throw ValidationError("agent.landing_noise_sigma must be >= 0");
  }
}

GazeAgent::GazeAgent(
  const GazeAgentConfig & cfg, const Point2 & start, std::vector<Point2> scan_targets)
: cfg_(cfg),
  pos_(clamp_unit(start)),
  scan_targets_(std::move(scan_targets)),
  choice_rng_(derive_seed(cfg.seed, "agent")),
  noise_rng_(derive_seed(cfg.seed, "noise"))
{
  cfg_.validate();
}

void GazeAgent::engage(double now_t)
{
  if (!engaged_t_) {
    engaged_t_ = now_t;
  }
}

Point2 GazeAgent::noisy(const Point2 & p)
{
  if (cfg_.landing_noise_sigma == 0.0) {
    return p;
  }
  const double dx = noise_rng_.normal() * cfg_.landing_noise_sigma;
  const double dy = noise_rng_.normal() * cfg_.landing_noise_sigma;
  return clamp_unit({p.x + dx, p.y + dy});
}

void GazeAgent::retarget(const Point2 & target, double start_t)
{
  saccade_ = Saccade{pos_, noisy(target), start_t};
}

void GazeAgent::advance(double now_t)
{
  if (!saccade_ || !reached(now_t, saccade_->start_t)) {
    return;
  }
  const double length = distance(saccade_->origin, saccade_->landing);
  const double travelled = cfg_.saccade_speed * std::max(0.0, now_t - saccade_->start_t);
  if (travelled >= length) {
    pos_ = saccade_->landing;
    saccade_.reset();
    return;
  }
  const double f = travelled / length;
  pos_ = {
    saccade_->origin.x + (saccade_->landing.x - saccade_->origin.x) * f,
    saccade_->origin.y + (saccade_->landing.y - saccade_->origin.y) * f};
}

void GazeAgent::step_guided(double now_t, const std::optional<ActiveCue> & cue)
{
  if (cue) {
    const bool new_marker = !pursued_index_ || *pursued_index_ != cue->index;
    const bool moved = !new_marker && !(pursued_position_ == cue->position);
    if (new_marker || moved) {
      pursued_index_ = cue->index;
      pursued_position_ = cue->position;
      response_scheduled_ = false;
    }
    if (!response_scheduled_) {
      // A marker that moved under a replan is a fresh stimulus at now_t.
      if (cfg_.kind == AgentKind::Compliant) {
        const double seen = moved ? now_t : cue->activated_t;
        retarget(cue->position, seen + cfg_.reaction_latency_s);
        response_scheduled_ = true;
      } else if (cue->urgency == Urgency::High) {
        const double seen = moved ? now_t : cue->urgency_since_t;
        retarget(cue->position, seen + cfg_.reaction_latency_s);
        response_scheduled_ = true;
      }
    }
  }
  advance(now_t);
}

void GazeAgent::step_scan(double now_t)
{
  if (scan_targets_.empty()) {
    return;
  }
  if (!scan_hold_until_ || reached(now_t, *scan_hold_until_)) {
    const double start =
      scan_hold_until_ ? *scan_hold_until_ : *engaged_t_ + cfg_.reaction_latency_s;
    // The previous saccade has long landed; settle there before departing.
    advance(now_t);
    const Point2 target = scan_targets_[choice_rng_.index(scan_targets_.size())];
    retarget(target, start);
    const double arrival = start + distance(saccade_->origin, saccade_->landing) /
      cfg_.saccade_speed;
    scan_hold_until_ = arrival + kScanDwellS;
  }
  advance(now_t);
}

GazeSample GazeAgent::step(double now_t, const std::optional<ActiveCue> & cue)
{
  if (engaged_t_) {
    switch (cfg_.kind) {
      case AgentKind::Compliant:
      case AgentKind::Distracted:
        step_guided(now_t, cue);
        break;
      case AgentKind::NonCompliant:
        break;
      case AgentKind::RandomScan:
        step_scan(now_t);
        break;
    }
  }
  return GazeSample{now_t, clamp_unit(pos_), true};
}

}  // namespace tcue
