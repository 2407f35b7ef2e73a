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

#ifndef TCUE__HARNESS_HPP_
#define TCUE__HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcue/agent.hpp"
#include "tcue/cues.hpp"
#include "tcue/gaze.hpp"
#include "tcue/planner.hpp"
#include "tcue/saliency.hpp"
#include "tcue/scene.hpp"

namespace tcue
{

/// Guided runs show cues; unguided runs only watch for the driver finding
/// the hazard on their own (same radius + dwell rule as a marker).
enum class RunMode { Guided, Unguided };

std::string_view to_string(RunMode mode);
RunMode run_mode_from_string(std::string_view text);

struct RunConfig
{
  std::string scene_id;
  RunMode mode{RunMode::Guided};
  /// The agent's seed is overwritten with `seed` when a run starts.
  GazeAgentConfig agent;
  EscalationConfig escalation;
  SaliencyConfig saliency;
  PlannerConfig planner;
  FixationConfig fixation;
  TargetFixationConfig target_fixation;
  int tick_hz{60};
  std::uint64_t seed{1};
  /// The takeover request fires once this much time has passed.
  double warmup_s{0.5};
  /// Gaze farther than this from the distraction point breaks the fixation.
  double break_radius{0.08};

  /// Throws ValidationError.
  void validate() const;
};

struct EscalationCounts
{
  int medium{0};
  int high{0};

  friend bool operator==(const EscalationCounts &, const EscalationCounts &) = default;
};

/// Times are seconds after the takeover request.
struct RunMetrics
{
  std::optional<double> t_break_s;
  std::optional<double> t_hazard_s;
  int waypoints_acquired{0};
  int planned_stops{0};
  EscalationCounts escalations;
  double gaze_path_length{0.0};
  double planned_length{0.0};
  bool completed{false};
  /// Fixation found in the warm-up window, if any.
  std::optional<FixationState> initial_fixation;
  /// Warm-up fixation sits within the target-fixation radius of the
  /// distraction point.
  bool initial_focus_on_distraction{false};
  bool target_fixation{false};

  friend bool operator==(const RunMetrics &, const RunMetrics &) = default;
};

using TraceEvent = std::variant<CueEvent, AudioEvent>;

double event_time(const TraceEvent & ev);

/// Fixed-step engine for one takeover: saliency and waypoints up front,
/// warm-up until warmup_s, then the takeover request and the cue loop.
///
/// Each tick is begin_tick() (may fire the takeover request and returns the
/// cue the driver can see) followed by end_tick(sample). Engine time is
/// tick_index / tick_hz; wall clocks never enter.
class TakeoverEngine
{
public:
  TakeoverEngine(const SceneSpec & scene, const RunConfig & cfg);

  std::optional<ActiveCue> begin_tick();
  void end_tick(GazeSample sample);

  bool finished() const;
  std::int64_t tick_index() const { return tick_; }
  double now() const;
  bool tor_issued() const { return tor_t_.has_value(); }
  std::optional<double> tor_time() const { return tor_t_; }

  RunMetrics metrics() const;
  const std::vector<TraceEvent> & events() const { return events_; }
  const GazeTrace & gaze() const { return gaze_; }
  const SceneSpec & scene() const { return scene_; }
  const RunConfig & config() const { return cfg_; }
  const SaliencyGrid & base_grid() const { return base_; }
  const SaliencyGrid & filtered_grid() const { return filtered_; }
  const std::vector<Waypoint> & waypoints() const { return waypoints_; }
  /// Initial plan; empty before the takeover request.
  const std::optional<PlannedTrajectory> & plan() const { return initial_plan_; }
  const std::optional<PlannedTrajectory> & current_plan() const { return plan_; }
  const CueMachine * cues() const { return cues_ ? &*cues_ : nullptr; }
  /// Index into events() where the current (or last completed) tick's
  /// events start.
  std::size_t tick_events_begin() const { return tick_event_mark_; }

private:
  void fire_tor();
  void record(const CueOutput & out);

  SceneSpec scene_;
  RunConfig cfg_;
  SaliencyGrid base_;
  SaliencyGrid filtered_;
  std::vector<Waypoint> waypoints_;

  std::int64_t tick_{0};
  bool began_{false};
  std::optional<double> tor_t_;
  std::optional<PlannedTrajectory> initial_plan_;
  std::optional<PlannedTrajectory> plan_;
  std::optional<CueMachine> cues_;
  std::optional<FixationState> initial_fixation_;

  std::vector<TraceEvent> events_;
  std::size_t tick_event_mark_{0};
  GazeTrace gaze_;

  // Metrics accumulators.
  std::optional<double> t_break_;
  std::optional<double> t_hazard_;
  std::optional<Point2> last_valid_after_tor_;
  double gaze_path_{0.0};
  std::optional<double> unguided_entry_t_;
};

struct RunResult
{
  RunConfig config;
  RunMetrics metrics;
  std::vector<TraceEvent> events;
  GazeTrace gaze;
  std::vector<Waypoint> waypoints;
  std::optional<PlannedTrajectory> plan;
};

/// Drives a TakeoverEngine with a synthetic agent until the hazard marker
/// is acquired or the scene duration runs out. With `replay`, tick k takes
/// sample k of the trace instead and the run also stops when it runs out.
RunResult run_scenario(
  const RunConfig & cfg, const SceneSpec & scene, const GazeTrace * replay = nullptr);

/// Looks the scene up by cfg.scene_id. Throws SceneNotFound.
RunResult run_scenario(const RunConfig & cfg, const SceneLibrary & library);

struct SeedComparison
{
  std::uint64_t seed{0};
  std::optional<double> guided_t_hazard_s;
  std::optional<double> unguided_t_hazard_s;
  bool guided_wins{false};
};

struct ComparisonSummary
{
  std::string scene_id;
  std::vector<SeedComparison> rows;
  /// Runs that never found the hazard count as +infinity; a median landing
  /// on one is reported as absent.
  std::optional<double> guided_median_s;
  std::optional<double> unguided_median_s;
  int guided_wins{0};
  double win_rate{0.0};
};

/// Seeds 1..n: guided Compliant runs against unguided RandomScan runs on the
/// same scene. `base` supplies every setting except agent kind, mode and
/// seed.
ComparisonSummary run_baseline_comparison(
  const SceneSpec & scene, int n_seeds, const RunConfig & base = {});

/// Median with absent values treated as +infinity.
std::optional<double> censored_median(const std::vector<std::optional<double>> & values);

}  // namespace tcue

#endif  // TCUE__HARNESS_HPP_
