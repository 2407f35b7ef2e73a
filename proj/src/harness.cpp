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

#include "tcue/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tcue/clock.hpp"
#include "tcue/errors.hpp"

namespace tcue
{

std::string_view to_string(RunMode mode)
{
  return mode == RunMode::Guided ? "Guided" : "Unguided";
}

RunMode run_mode_from_string(std::string_view text)
{
  if (text == "Guided") {
    return RunMode::Guided;
  }
  if (text == "Unguided") {
    return RunMode::Unguided;
  }
  throw ValidationError("mode must be Guided or Unguided");
}

void RunConfig::validate() const
{
  if (tick_hz <= 0) {
    throw ValidationError("tick_hz must be > 0");
  }
  agent.validate();
  escalation.validate();
  if (saliency.grid.width < 8 || saliency.grid.height < 8) {
    throw ValidationError("saliency.grid must be at least 8x8");
  }
  if (!(saliency.sigma_h > 0.0)) {
    throw ValidationError("saliency.sigma_h must be > 0");
  }
  const auto & wp = saliency.waypoints;
  if (!(wp.tau > 0.0 && wp.tau < 1.0)) {
    throw ValidationError("saliency.waypoints.tau must be in (0, 1)");
  }
  if (wp.k_max < 0) {
    throw ValidationError("saliency.waypoints.k_max must be >= 0");
  }
  if (wp.k_max > planner.max_exact) {
    throw ValidationError("saliency.waypoints.k_max exceeds planner.max_exact");
  }
  if (wp.min_sep < 0.0 || wp.hazard_exclusion < 0.0 || wp.snap_radius < 0.0) {
    throw ValidationError("saliency.waypoints radii must be >= 0");
  }
  if (!(fixation.min_fix_duration_s > 0.0) || !(fixation.disp_threshold > 0.0)) {
    throw ValidationError("fixation thresholds must be > 0");
  }
  if (!(target_fixation.target_fix_duration_s > 0.0) || !(target_fixation.radius > 0.0)) {
    throw ValidationError("target_fixation thresholds must be > 0");
  }
  if (!(warmup_s >= 0.0) || !std::isfinite(warmup_s)) {
    throw ValidationError("warmup_s must be >= 0");
  }
  if (!(break_radius > 0.0)) {
    throw ValidationError("break_radius must be > 0");
  }
}

double event_time(const TraceEvent & ev)
{
  return std::visit([](const auto & e) {return e.t;}, ev);
}

namespace
{

const SceneSpec & checked(const SceneSpec & scene, const RunConfig & cfg)
{
  validate_scene(scene);
  cfg.validate();
  return scene;
}

}  // namespace

TakeoverEngine::TakeoverEngine(const SceneSpec & scene, const RunConfig & cfg)
: scene_(checked(scene, cfg)),
  cfg_(cfg),
  base_(base_saliency(scene, cfg.saliency.grid)),
  filtered_(fuse_hazard_prior(base_, scene.hazard.position, cfg.saliency.sigma_h)),
  waypoints_(extract_waypoints(filtered_, scene, cfg.saliency.waypoints))
{
}

double TakeoverEngine::now() const
{
  return tick_time(tick_, cfg_.tick_hz);
}

bool TakeoverEngine::finished() const
{
  if (t_hazard_) {
    return true;
  }
  return reached(now(), scene_.duration_s);
}

void TakeoverEngine::record(const CueOutput & out)
{
  for (const auto & ev : out.events) {
    events_.emplace_back(ev);
  }
  for (const auto & ev : out.audio) {
    events_.emplace_back(ev);
  }
}

void TakeoverEngine::fire_tor()
{
  const double t = now();
  tor_t_ = t;

  Point2 p0 = scene_.distraction_point;
  initial_fixation_ = detect_fixation(gaze_, cfg_.fixation);
  if (initial_fixation_) {
    p0 = initial_fixation_->centroid;
  } else {
    const auto last_valid = std::find_if(
      gaze_.rbegin(), gaze_.rend(), [](const GazeSample & s) {return s.valid;});
    if (last_valid != gaze_.rend()) {
      p0 = last_valid->point;
    }
  }

  initial_plan_ = plan_trajectory(p0, waypoints_, scene_.hazard.position, cfg_.planner);
  plan_ = initial_plan_;
  if (cfg_.mode == RunMode::Guided) {
    cues_.emplace(*initial_plan_, scene_.hazard.severity, t, cfg_.escalation);
    record(cues_->initial_output());
  }
}

std::optional<ActiveCue> TakeoverEngine::begin_tick()
{
  if (began_) {
    throw std::logic_error("begin_tick called twice without end_tick");
  }
  began_ = true;
  tick_event_mark_ = events_.size();
  if (!tor_t_ && reached(now(), cfg_.warmup_s)) {
    fire_tor();
  }
  if (cues_) {
    return cues_->active_cue();
  }
  return std::nullopt;
}

void TakeoverEngine::end_tick(GazeSample sample)
{
  if (!began_) {
    throw std::logic_error("end_tick called without begin_tick");
  }
  const double t = now();
  sample.t = t;
  if (!std::isfinite(sample.point.x) || !std::isfinite(sample.point.y) ||
    !in_unit_square(sample.point))
  {
    sample.valid = false;
  }
  gaze_.push_back(sample);

  if (tor_t_) {
    const double since_tor = t - *tor_t_;
    if (sample.valid) {
      if (!t_break_ && distance(sample.point, scene_.distraction_point) > cfg_.break_radius) {
        t_break_ = since_tor;
      }
      if (last_valid_after_tor_) {
        gaze_path_ += distance(*last_valid_after_tor_, sample.point);
      }
      last_valid_after_tor_ = sample.point;
    }

    if (cues_) {
      CueOutput out = cues_->step(sample, t);
      const bool deviated = std::any_of(
        out.events.begin(), out.events.end(),
        [](const CueEvent & e) {return e.kind == CueEventKind::Deviation;});
      if (deviated && !cues_->complete()) {
        const auto remaining = cues_->unacquired_stops();
        PlannedTrajectory replanned = replan_on_deviation(
          *plan_, sample.point, remaining, scene_.hazard.position, cfg_.planner);
        out.append(cues_->apply_replan(replanned, t));
        plan_ = std::move(replanned);
      }
      record(out);
      if (cues_->complete() && !t_hazard_) {
        t_hazard_ = since_tor;
      }
    } else {
      // Unguided: same radius + dwell rule a hazard marker would apply.
      const bool inside = sample.valid &&
        distance(sample.point, scene_.hazard.position) <= cfg_.escalation.acquire_radius;
      if (!inside) {
        unguided_entry_t_.reset();
      } else {
        if (!unguided_entry_t_) {
          unguided_entry_t_ = t;
        }
        if (reached(t - *unguided_entry_t_, cfg_.escalation.dwell_s) && !t_hazard_) {
          t_hazard_ = since_tor;
        }
      }
    }
  }

  ++tick_;
  began_ = false;
}

RunMetrics TakeoverEngine::metrics() const
{
  RunMetrics m;
  m.t_break_s = t_break_;
  m.t_hazard_s = t_hazard_;
  m.completed = t_hazard_.has_value();
  m.gaze_path_length = gaze_path_;
  if (initial_plan_) {
    m.planned_stops = static_cast<int>(initial_plan_->stops.size());
    m.planned_length = initial_plan_->total_length;
  }
  if (cues_) {
    for (const auto & marker : cues_->markers()) {
      if (!marker.is_hazard && marker.state == MarkerState::Acquired) {
        ++m.waypoints_acquired;
      }
    }
  }
  for (const auto & ev : events_) {
    if (const auto * cue = std::get_if<CueEvent>(&ev)) {
      if (cue->kind == CueEventKind::UrgencyChanged) {
        if (cue->urgency == Urgency::Medium) {
          ++m.escalations.medium;
        } else if (cue->urgency == Urgency::High) {
          ++m.escalations.high;
        }
      }
    }
  }
  m.initial_fixation = initial_fixation_;
  if (initial_fixation_) {
    m.initial_focus_on_distraction = distance(
      initial_fixation_->centroid, scene_.distraction_point) <= cfg_.target_fixation.radius;
    m.target_fixation = detect_target_fixation(*initial_fixation_, cfg_.target_fixation);
  }
  return m;
}

RunResult run_scenario(const RunConfig & cfg_in, const SceneSpec & scene, const GazeTrace * replay)
{
  RunConfig cfg = cfg_in;
  if (cfg.scene_id.empty()) {
    cfg.scene_id = scene.id;
  } else if (cfg.scene_id != scene.id) {
    throw ValidationError(
      "run config names scene '" + cfg.scene_id + "' but was given '" + scene.id + "'");
  }
  cfg.agent.seed = cfg.seed;

  TakeoverEngine engine(scene, cfg);
  std::vector<Point2> scan_targets;
  for (const auto & obj : scene.objects) {
    scan_targets.push_back(obj.centroid);
  }
  GazeAgent agent(cfg.agent, scene.distraction_point, std::move(scan_targets));

  while (!engine.finished()) {
    if (replay && static_cast<std::size_t>(engine.tick_index()) >= replay->size()) {
      break;
    }
    const auto cue = engine.begin_tick();
    const double t = engine.now();
    GazeSample sample;
    if (replay) {
      const auto k = static_cast<std::size_t>(engine.tick_index());
      sample = (*replay)[k];
    } else {
      if (engine.tor_issued()) {
        agent.engage(*engine.tor_time());
      }
      sample = agent.step(t, cue);
    }
    engine.end_tick(sample);
  }

  RunResult result;
  result.config = cfg;
  result.metrics = engine.metrics();
  result.events = engine.events();
  result.gaze = engine.gaze();
  result.waypoints = engine.waypoints();
  result.plan = engine.plan();
  return result;
}

RunResult run_scenario(const RunConfig & cfg, const SceneLibrary & library)
{
  return run_scenario(cfg, library.get(cfg.scene_id));
}

std::optional<double> censored_median(const std::vector<std::optional<double>> & values)
{
  if (values.empty()) {
    return std::nullopt;
  }
  std::vector<double> v;
  v.reserve(values.size());
  for (const auto & x : values) {
    v.push_back(x ? *x : std::numeric_limits<double>::infinity());
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double med = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  if (!std::isfinite(med)) {
    return std::nullopt;
  }
  return med;
}

ComparisonSummary run_baseline_comparison(
  const SceneSpec & scene, int n_seeds, const RunConfig & base)
{
  if (n_seeds < 1) {
    throw ValidationError("n_seeds must be >= 1");
  }
  ComparisonSummary summary;
  summary.scene_id = scene.id;

  RunConfig guided = base;
  guided.scene_id = scene.id;
  guided.mode = RunMode::Guided;
  guided.agent.kind = AgentKind::Compliant;

  RunConfig unguided = guided;
  unguided.mode = RunMode::Unguided;
  unguided.agent.kind = AgentKind::RandomScan;

  std::vector<std::optional<double>> g_times;
  std::vector<std::optional<double>> u_times;
  for (int s = 1; s <= n_seeds; ++s) {
    guided.seed = static_cast<std::uint64_t>(s);
    unguided.seed = static_cast<std::uint64_t>(s);
    SeedComparison row;
    row.seed = static_cast<std::uint64_t>(s);
    row.guided_t_hazard_s = run_scenario(guided, scene).metrics.t_hazard_s;
    row.unguided_t_hazard_s = run_scenario(unguided, scene).metrics.t_hazard_s;
    row.guided_wins = row.guided_t_hazard_s &&
      (!row.unguided_t_hazard_s || *row.guided_t_hazard_s < *row.unguided_t_hazard_s);
    summary.guided_wins += row.guided_wins ? 1 : 0;
    g_times.push_back(row.guided_t_hazard_s);
    u_times.push_back(row.unguided_t_hazard_s);
    summary.rows.push_back(row);
  }
  summary.guided_median_s = censored_median(g_times);
  summary.unguided_median_s = censored_median(u_times);
  summary.win_rate = static_cast<double>(summary.guided_wins) / n_seeds;
  return summary;
}

}  // namespace tcue
