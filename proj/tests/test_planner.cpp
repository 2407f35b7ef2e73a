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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tcue/errors.hpp"
#include "tcue/planner.hpp"

namespace tcue
{
namespace
{

std::vector<Waypoint> wps(std::initializer_list<Point2> pts)
{
  std::vector<Waypoint> out;
  for (const auto & p : pts) {
    Waypoint w;
    w.position = p;
    w.score = 1.0;
    out.push_back(w);
  }
  return out;
}

std::vector<Point2> positions(const PlannedTrajectory & t)
{
  std::vector<Point2> out;
  for (const auto & s : t.stops) {
    out.push_back(s.position);
  }
  return out;
}

TEST(Planner, EmptyIsDirect)
{
  const auto t = plan_trajectory({0.1, 0.2}, {}, {0.4, 0.6});
  EXPECT_TRUE(t.stops.empty());
  EXPECT_DOUBLE_EQ(t.total_length, 0.5);
  EXPECT_EQ(t.start, (Point2{0.1, 0.2}));
  EXPECT_EQ(t.terminal, (Point2{0.4, 0.6}));
}

TEST(Planner, SingleStop)
{
  const auto in = wps({{0.5, 0.5}});
  const auto t = plan_trajectory({0.1, 0.5}, in, {0.9, 0.5});
  ASSERT_EQ(t.stops.size(), 1u);
  EXPECT_NEAR(t.total_length, 0.8, 1e-15);
}

TEST(Planner, CollinearExample)
{
  const auto in = wps({{0.3, 0.5}, {0.7, 0.5}, {0.5, 0.5}});
  const auto t = plan_trajectory({0.1, 0.5}, in, {0.9, 0.5});
  EXPECT_EQ(positions(t), (std::vector<Point2>{{0.3, 0.5}, {0.5, 0.5}, {0.7, 0.5}}));
  EXPECT_NEAR(t.total_length, 0.8, 1e-12);
  const auto brute = oracle::best_order({0.1, 0.5}, {{0.3, 0.5}, {0.7, 0.5}, {0.5, 0.5}}, {0.9, 0.5});
  EXPECT_EQ(positions(t), brute.order);
}

TEST(Planner, TooManyWaypoints)
{
  std::vector<Waypoint> in(9);
  EXPECT_THROW(plan_trajectory({0, 0}, in, {1, 1}), TooManyWaypoints);
  PlannerConfig small;
  small.max_exact = 2;
  EXPECT_THROW(plan_trajectory({0, 0}, wps({{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}}), {1, 1}, small),
    TooManyWaypoints);
}

TEST(Planner, LengthMatchesRecomputedSum)
{
  const auto in = wps({{0.2, 0.9}, {0.6, 0.1}, {0.4, 0.4}, {0.9, 0.7}});
  const auto t = plan_trajectory({0.5, 0.5}, in, {0.1, 0.1});
  EXPECT_NEAR(t.total_length, path_length(t.start, t.stops, t.terminal), 1e-12);
  EXPECT_NEAR(t.total_length, oracle::leg_sum(t.start, positions(t), t.terminal), 1e-12);
}

TEST(Planner, SymmetricTieUsesYX)
{
  // Mirror-image stops above and below the p0-h axis: both orders tie.
  const auto in = wps({{0.5, 0.7}, {0.5, 0.3}});
  const auto t = plan_trajectory({0.1, 0.5}, in, {0.9, 0.5});
  EXPECT_EQ(positions(t).front(), (Point2{0.5, 0.3}));
  const auto again = plan_trajectory({0.1, 0.5}, wps({{0.5, 0.3}, {0.5, 0.7}}), {0.9, 0.5});
  EXPECT_EQ(positions(again), positions(t));
}

TEST(Planner, MatchesBruteForce)
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = trial % 7;
    std::vector<Waypoint> in;
    std::vector<Point2> pts;
    for (int i = 0; i < k; ++i) {
      Waypoint w;
      w.position = {u(rng), u(rng)};
      in.push_back(w);
      pts.push_back(w.position);
    }
    const Point2 p0{u(rng), u(rng)};
    const Point2 h{u(rng), u(rng)};
    const auto t = plan_trajectory(p0, in, h);
    const auto brute = oracle::best_order(p0, pts, h);
    EXPECT_EQ(t.total_length, brute.length);
    EXPECT_EQ(positions(t), brute.order);
  }
}

TEST(Replan, RemainingEmptyAndIdempotent)
{
  const auto in = wps({{0.3, 0.2}, {0.6, 0.8}, {0.2, 0.7}});
  const auto cur = plan_trajectory({0.1, 0.1}, in, {0.9, 0.9});
  const auto direct = replan_on_deviation(cur, {0.5, 0.5}, {}, {0.9, 0.9});
  EXPECT_TRUE(direct.stops.empty());
  EXPECT_EQ(direct.start, (Point2{0.5, 0.5}));
  EXPECT_EQ(replan_on_deviation(cur, cur.start, cur.stops, cur.terminal), cur);
}

TEST(Replan, TwoOfThreeMatchesFreshPlan)
{
  const auto in = wps({{0.3, 0.2}, {0.6, 0.8}, {0.2, 0.7}});
  const auto cur = plan_trajectory({0.1, 0.1}, in, {0.9, 0.9});
  const std::vector<Waypoint> remaining(cur.stops.begin() + 1, cur.stops.end());
  const auto re = replan_on_deviation(cur, {0.8, 0.2}, remaining, {0.9, 0.9});
  const auto brute = oracle::best_order(
    {0.8, 0.2}, {remaining[0].position, remaining[1].position}, {0.9, 0.9});
  EXPECT_EQ(positions(re), brute.order);
  for (const auto & s : re.stops) {
    EXPECT_NE(s.position, cur.stops.front().position);
  }
}

TEST(Replan, RejectsForeignStops)
{
  const auto cur = plan_trajectory({0.1, 0.1}, wps({{0.3, 0.2}}), {0.9, 0.9});
  EXPECT_THROW(
    replan_on_deviation(cur, {0.5, 0.5}, wps({{0.4, 0.4}}), {0.9, 0.9}), ValidationError);
}

}  // namespace
}  // namespace tcue
