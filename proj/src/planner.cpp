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

#include "tcue/planner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tcue/errors.hpp"

namespace tcue
{

double path_length(const Point2 & start, std::span<const Waypoint> stops, const Point2 & terminal)
{
  double total = 0.0;
  Point2 prev = start;
  for (const auto & stop : stops) {
    total += distance(prev, stop.position);
    prev = stop.position;
  }
  return total + distance(prev, terminal);
}

PlannedTrajectory plan_trajectory(
  const Point2 & p0, std::span<const Waypoint> waypoints, const Point2 & hazard,
  const PlannerConfig & cfg)
{
  if (static_cast<int>(waypoints.size()) > cfg.max_exact) {
    throw TooManyWaypoints(
      std::to_string(waypoints.size()) + " waypoints exceed the exact planner limit of " +
      std::to_string(cfg.max_exact));
  }

  // Sorting by (y, x) first makes next_permutation walk orderings in
  // lexicographic order of their position sequences. Pass one finds the
  // minimum, pass two takes the first ordering within the tie tolerance.
  std::vector<Waypoint> order(waypoints.begin(), waypoints.end());
  const auto by_position = [](const Waypoint & a, const Waypoint & b) {
      if (a.position == b.position) {
        return a.score > b.score;
      }
      return less_yx(a.position, b.position);
    };
  std::sort(order.begin(), order.end(), by_position);

  std::vector<Waypoint> scratch(order.size());
  const auto length_of = [&](const std::vector<std::size_t> & perm) {
      for (std::size_t i = 0; i < perm.size(); ++i) {
        scratch[i] = order[perm[i]];
      }
      return path_length(p0, scratch, hazard);
    };

  std::vector<std::size_t> perm(order.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, length_of(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  // next_permutation wrapped perm back to ascending order.
  std::vector<std::size_t> best_perm;
  do {
    if (length_of(perm) <= best + kLengthTieEpsilon) {
      best_perm = perm;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  PlannedTrajectory plan;
  plan.start = p0;
  plan.terminal = hazard;
  plan.stops.reserve(order.size());
  for (const auto idx : best_perm) {
    plan.stops.push_back(order[idx]);
  }
  plan.total_length = path_length(p0, plan.stops, hazard);
  return plan;
}

PlannedTrajectory replan_on_deviation(
  const PlannedTrajectory & current, const Point2 & new_p0, std::span<const Waypoint> remaining,
  const Point2 & hazard, const PlannerConfig & cfg)
{
  for (const auto & wp : remaining) {
    const bool known = std::any_of(
      current.stops.begin(), current.stops.end(), [&](const Waypoint & s) {return s == wp;});
    if (!known) {
      throw ValidationError("replan waypoint is not part of the current trajectory");
    }
  }
  return plan_trajectory(new_p0, remaining, hazard, cfg);
}

}  // namespace tcue
