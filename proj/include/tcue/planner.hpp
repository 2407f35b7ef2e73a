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

#ifndef TCUE__PLANNER_HPP_
#define TCUE__PLANNER_HPP_

#include <span>
#include <vector>

#include "tcue/geometry.hpp"
#include "tcue/saliency.hpp"

namespace tcue
{

struct PlannerConfig
{
  int max_exact{8};
};

/// Two orderings whose lengths differ by no more than this are ties.
inline constexpr double kLengthTieEpsilon = 1e-12;

/// Gaze-guidance path: start -> stops... -> terminal.
struct PlannedTrajectory
{
  Point2 start;
  std::vector<Waypoint> stops;
  Point2 terminal;
  double total_length{0.0};

  friend bool operator==(const PlannedTrajectory &, const PlannedTrajectory &) = default;
};

/// Sum of consecutive Euclidean distances, accumulated in path order.
double path_length(const Point2 & start, std::span<const Waypoint> stops, const Point2 & terminal);

/// Orders every waypoint to minimize total path length from `p0` to
/// `hazard` by exhaustive enumeration. Among orderings within
/// kLengthTieEpsilon of the best, the one whose position sequence is
/// lexicographically smallest under (y, x) wins.
/// Throws TooManyWaypoints above cfg.max_exact.
PlannedTrajectory plan_trajectory(
  const Point2 & p0, std::span<const Waypoint> waypoints, const Point2 & hazard,
  const PlannerConfig & cfg = {});

/// Fresh plan over the markers not yet acquired, starting from where the
/// driver is now looking. Throws ValidationError when `remaining` holds a
/// stop that is not in `current`.
PlannedTrajectory replan_on_deviation(
  const PlannedTrajectory & current, const Point2 & new_p0, std::span<const Waypoint> remaining,
  const Point2 & hazard, const PlannerConfig & cfg = {});

}  // namespace tcue

#endif  // TCUE__PLANNER_HPP_
