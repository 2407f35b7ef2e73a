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

#ifndef TCUE__AGENT_HPP_
#define TCUE__AGENT_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tcue/gaze.hpp"
#include "tcue/geometry.hpp"
#include "tcue/rng.hpp"
#include "tcue/urgency.hpp"

namespace tcue
{

enum class AgentKind { Compliant, Distracted, NonCompliant, RandomScan };

std::string_view to_string(AgentKind kind);
/// Throws ValidationError on unknown names.
AgentKind agent_kind_from_string(std::string_view text);

struct GazeAgentConfig
{
  AgentKind kind{AgentKind::Compliant};
  double reaction_latency_s{0.25};
  /// Normalized plane units per second.
  double saccade_speed{3.0};
  double landing_noise_sigma{0.01};
  std::uint64_t seed{1};

  /// Defaults per kind: Distracted reacts after 0.8 s, the rest after 0.25 s.
  static GazeAgentConfig defaults_for(AgentKind kind);
  /// Throws ValidationError.
  void validate() const;

  friend bool operator==(const GazeAgentConfig &, const GazeAgentConfig &) = default;
};

/// What the agent can see of the HUD on a given tick.
struct ActiveCue
{
  int index{0};
  Point2 position;
  Urgency urgency{Urgency::Low};
  double activated_t{0.0};
  /// When the marker reached its current urgency.
  double urgency_since_t{0.0};
};

/// Synthetic driver producing one gaze sample per tick.
///
/// Until engage() the agent rests on its start point. Compliant agents
/// wait reaction_latency_s after a marker activates, then saccade toward it
/// at saccade_speed and hold on the (noisy) landing point. Distracted agents
/// do the same but only once the marker has escalated to High. NonCompliant
/// agents never move. RandomScan agents wait reaction_latency_s, then
/// repeatedly saccade to a uniformly chosen scan target and hold it for
/// 0.5 s, ignoring markers.
///
/// Randomness comes from two named sub-streams of the configured seed:
/// "agent" for target choice and "noise" for landing noise.
class GazeAgent
{
public:
  GazeAgent(const GazeAgentConfig & cfg, const Point2 & start, std::vector<Point2> scan_targets);

  /// Marks the takeover request; reactions are timed from here.
  void engage(double now_t);

  GazeSample step(double now_t, const std::optional<ActiveCue> & cue);

  const GazeAgentConfig & config() const { return cfg_; }
  Point2 position() const { return pos_; }

  static constexpr double kScanDwellS = 0.5;

private:
  struct Saccade
  {
    Point2 origin;
    Point2 landing;
    double start_t;
  };

  Point2 noisy(const Point2 & p);
  void retarget(const Point2 & target, double start_t);
  void advance(double now_t);
  void step_guided(double now_t, const std::optional<ActiveCue> & cue);
  void step_scan(double now_t);

  GazeAgentConfig cfg_;
  Point2 pos_;
  std::vector<Point2> scan_targets_;
  Rng choice_rng_;
  Rng noise_rng_;

  std::optional<double> engaged_t_;
  std::optional<Saccade> saccade_;
  // Guided kinds: identity of the marker being pursued.
  std::optional<int> pursued_index_;
  Point2 pursued_position_;
  bool response_scheduled_{false};
  // RandomScan: when the current hold ends.
  std::optional<double> scan_hold_until_;
};

}  // namespace tcue

#endif  // TCUE__AGENT_HPP_
