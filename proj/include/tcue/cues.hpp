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

#ifndef TCUE__CUES_HPP_
#define TCUE__CUES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcue/agent.hpp"
#include "tcue/gaze.hpp"
#include "tcue/geometry.hpp"
#include "tcue/planner.hpp"
#include "tcue/scene.hpp"
#include "tcue/urgency.hpp"

namespace tcue
{

enum class MarkerState { Pending, Active, Acquired };

std::string_view to_string(MarkerState state);

/// One HUD marker. Index is the slot in the trajectory; the hazard marker is
/// always last. A replan may move a slot's position but never its state.
struct CueMarker
{
  int index{0};
  Point2 position;
  MarkerState state{MarkerState::Pending};
  Urgency urgency{Urgency::Low};
  std::optional<double> activated_t;
  std::optional<double> acquired_t;
  std::optional<std::string> object_id;
  bool is_hazard{false};

  friend bool operator==(const CueMarker &, const CueMarker &) = default;
};

enum class CueShape { Arrow, Icon, Ring };
enum class CueColor { Neutral, Yellow, Red };

std::string_view to_string(CueShape shape);
std::string_view to_string(CueColor color);

struct CueStyle
{
  CueShape shape{CueShape::Arrow};
  CueColor color{CueColor::Neutral};
  bool pulsing{false};
  /// Zero when not pulsing.
  double pulse_period_s{0.0};

  friend bool operator==(const CueStyle &, const CueStyle &) = default;
};

/// Low: neutral steady arrow. Medium: yellow arrow pulsing every 0.8 s.
/// High: red arrow pulsing every 0.4 s.
CueStyle style_for(Urgency urgency);

enum class AudioKind { LowTone, UrgentBeep };

std::string_view to_string(AudioKind kind);

struct AudioEvent
{
  double t{0.0};
  AudioKind kind{AudioKind::LowTone};
  double frequency_hz{440.0};
  double duration_s{0.15};
  /// -1 full left, +1 full right; 2 * marker.x - 1.
  double pan{0.0};
  int marker_index{0};

  friend bool operator==(const AudioEvent &, const AudioEvent &) = default;
};

/// LowTone is 440 Hz for 0.15 s, UrgentBeep 880 Hz for 0.10 s.
AudioEvent make_audio(AudioKind kind, double t, const CueMarker & marker);

struct EscalationConfig
{
  double t_medium_s{2.0};
  double t_high_s{4.0};
  double acquire_radius{0.06};
  double dwell_s{0.3};
  double beep_period_s{0.5};
  /// Deviation: gaze farther than this from the active marker...
  double deviation_radius{0.15};
  /// ...for longer than this.
  double deviation_s{1.0};

  /// Throws ValidationError.
  void validate() const;

  friend bool operator==(const EscalationConfig &, const EscalationConfig &) = default;
};

enum class CueEventKind { Activated, UrgencyChanged, Acquired, Deviation, Replanned, Completed };

std::string_view to_string(CueEventKind kind);

struct CueEvent
{
  double t{0.0};
  CueEventKind kind{CueEventKind::Activated};
  int marker_index{0};
  Point2 position;
  Urgency urgency{Urgency::Low};
  /// Deviation: the gaze point that triggered it.
  std::optional<Point2> gaze;
  /// Replanned: new positions of every unacquired marker, in slot order.
  std::vector<Point2> positions;

  friend bool operator==(const CueEvent &, const CueEvent &) = default;
};

struct CueOutput
{
  std::vector<CueEvent> events;
  std::vector<AudioEvent> audio;

  bool empty() const { return events.empty() && audio.empty(); }
  void append(CueOutput other);
};

/// Sequential marker lifecycle for one takeover.
///
/// Exactly one marker is Active until the hazard marker is acquired. A
/// marker is acquired once valid gaze stays within acquire_radius of it for
/// dwell_s without interruption. While a marker waits, its urgency rises to
/// Medium at t_medium_s and High at t_high_s after its activation; while
/// High an UrgentBeep sounds on entry and every beep_period_s after.
class CueMachine
{
public:
  /// Builds markers for every stop plus the hazard and activates the first
  /// at `now_t`. Initial urgency is Medium for High-severity hazards and Low
  /// otherwise; activation sounds an UrgentBeep or LowTone to match.
  CueMachine(
    const PlannedTrajectory & trajectory, Severity severity, double now_t,
    const EscalationConfig & cfg = {});

  /// Events produced by construction (first activation).
  const CueOutput & initial_output() const { return initial_; }

  /// Advances one tick. Throws ClockRegression if `now_t` goes backwards.
  CueOutput step(const GazeSample & sample, double now_t);

  /// Reassigns the unacquired stop slots to `plan` order. `plan.stops` must
  /// be exactly the unacquired stops. Emits Replanned when a position moved.
  CueOutput apply_replan(const PlannedTrajectory & plan, double now_t);

  bool complete() const { return complete_; }
  const std::vector<CueMarker> & markers() const { return markers_; }
  std::optional<int> active_index() const;
  std::optional<ActiveCue> active_cue() const;
  /// Stops (not the hazard) that are Active or Pending, in slot order.
  std::vector<Waypoint> unacquired_stops() const;
  Urgency initial_urgency() const { return initial_urgency_; }
  const EscalationConfig & config() const { return cfg_; }

private:
  CueOutput activate(int index, double now_t);
  void acquire(CueMarker & marker, double now_t, CueOutput & out);
  void escalate(CueMarker & marker, double now_t, CueOutput & out);
  void watch_deviation(const CueMarker & marker, const GazeSample & sample, double now_t,
    CueOutput & out);

  EscalationConfig cfg_;
  Severity severity_;
  Urgency initial_urgency_;
  std::vector<CueMarker> markers_;
  std::vector<Waypoint> stops_;
  int active_{0};
  bool complete_{false};
  double last_now_;
  CueOutput initial_;

  std::optional<double> dwell_entry_t_;
  std::optional<double> deviation_since_t_;
  double urgency_since_t_{0.0};
  int beeps_sent_{0};
  double high_since_t_{0.0};
};

}  // namespace tcue

#endif  // TCUE__CUES_HPP_
