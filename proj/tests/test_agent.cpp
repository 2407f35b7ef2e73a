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

#include "tcue/agent.hpp"
#include "tcue/errors.hpp"
#include "tcue/rng.hpp"

namespace tcue
{
namespace
{

constexpr double kDt = 1.0 / 60.0;

std::vector<GazeSample> drive(
  GazeAgent & agent, int ticks, const std::optional<ActiveCue> & cue, int engage_tick = 0)
{
  std::vector<GazeSample> out;
  for (int k = 0; k < ticks; ++k) {
    const double t = k * kDt;
    if (k == engage_tick) {
      agent.engage(t);
    }
    out.push_back(agent.step(t, k >= engage_tick ? cue : std::nullopt));
  }
  return out;
}

TEST(Rng, DerivedStreamsDifferAndRepeat)
{
  EXPECT_EQ(derive_seed(7, "agent"), derive_seed(7, "agent"));
  EXPECT_NE(derive_seed(7, "agent"), derive_seed(7, "noise"));
  EXPECT_NE(derive_seed(7, "agent"), derive_seed(8, "agent"));
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(AgentConfig, DefaultsAndValidation)
{
  EXPECT_DOUBLE_EQ(GazeAgentConfig::defaults_for(AgentKind::Compliant).reaction_latency_s, 0.25);
  EXPECT_DOUBLE_EQ(GazeAgentConfig::defaults_for(AgentKind::Distracted).reaction_latency_s, 0.8);
  GazeAgentConfig c;
  c.saccade_speed = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.reaction_latency_s = -0.1;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_EQ(agent_kind_from_string("RandomScan"), AgentKind::RandomScan);
  EXPECT_THROW(agent_kind_from_string("Sleepy"), ValidationError);
}

TEST(Agent, NonCompliantStaysPut)
{
  GazeAgentConfig cfg = GazeAgentConfig::defaults_for(AgentKind::NonCompliant);
  GazeAgent agent(cfg, {0.1, 0.8}, {});
  const ActiveCue cue{0, {0.9, 0.1}, Urgency::High, 0.0, 0.0};
  for (const auto & s : drive(agent, 600, cue)) {
    EXPECT_EQ(s.point, (Point2{0.1, 0.8}));
    EXPECT_TRUE(s.valid);
  }
}

TEST(Agent, CompliantClosedFormArrival)
{
  GazeAgentConfig cfg;
  cfg.landing_noise_sigma = 0.0;
  GazeAgent agent(cfg, {0.2, 0.5}, {});
  // Marker 0.6 away, activated at t = 1.0 s.
  const ActiveCue cue{0, {0.8, 0.5}, Urgency::Low, 1.0, 1.0};
  const auto trace = drive(agent, 200, cue, 60);
  std::optional<double> arrived;
  for (const auto & s : trace) {
    if (!arrived && distance(s.point, cue.position) < 1e-12) {
      arrived = s.t;
    }
  }
  ASSERT_TRUE(arrived);
  // activation + latency + distance / speed = 1.0 + 0.25 + 0.2
  EXPECT_NEAR(*arrived, 1.45, 2 * kDt);
  // Still before the latency elapses.
  EXPECT_EQ(trace[74].point, (Point2{0.2, 0.5}));
}

TEST(Agent, CompliantLandingNoiseBounded)
{
  GazeAgentConfig cfg;
  cfg.seed = 99;
  GazeAgent agent(cfg, {0.2, 0.5}, {});
  const ActiveCue cue{0, {0.8, 0.5}, Urgency::Low, 0.0, 0.0};
  const auto trace = drive(agent, 120, cue);
  EXPECT_LT(distance(trace.back().point, cue.position), 6 * cfg.landing_noise_sigma);
}

TEST(Agent, DistractedWaitsForHigh)
{
  GazeAgentConfig cfg = GazeAgentConfig::defaults_for(AgentKind::Distracted);
  cfg.landing_noise_sigma = 0.0;
  GazeAgent agent(cfg, {0.2, 0.5}, {});
  ActiveCue cue{0, {0.8, 0.5}, Urgency::Medium, 0.0, 0.0};
  for (int k = 0; k < 120; ++k) {
    if (k == 0) {
      agent.engage(0.0);
    }
    EXPECT_EQ(agent.step(k * kDt, cue).point, (Point2{0.2, 0.5}));
  }
  cue.urgency = Urgency::High;
  cue.urgency_since_t = 2.0;
  std::optional<double> arrived;
  for (int k = 120; k < 300 && !arrived; ++k) {
    if (agent.step(k * kDt, cue).point == cue.position) {
      arrived = k * kDt;
    }
  }
  ASSERT_TRUE(arrived);
  EXPECT_NEAR(*arrived, 2.0 + 0.8 + 0.2, 2 * kDt);
}

TEST(Agent, RandomScanVisitsObjectsAndIgnoresCues)
{
  GazeAgentConfig cfg = GazeAgentConfig::defaults_for(AgentKind::RandomScan);
  cfg.seed = 3;
  const std::vector<Point2> targets{{0.2, 0.2}, {0.8, 0.2}, {0.5, 0.8}};
  GazeAgent with_cue(cfg, {0.5, 0.5}, targets);
  GazeAgent without(cfg, {0.5, 0.5}, targets);
  const ActiveCue cue{0, {0.9, 0.9}, Urgency::High, 0.0, 0.0};
  const auto a = drive(with_cue, 900, cue);
  const auto b = drive(without, 900, std::nullopt);
  EXPECT_EQ(a, b);
  int near_targets = 0;
  for (const auto & s : a) {
    for (const auto & t : targets) {
      near_targets += distance(s.point, t) < 0.05;
    }
  }
  EXPECT_GT(near_targets, 450);
}

TEST(Agent, SameSeedSameStream)
{
  for (auto kind : {AgentKind::Compliant, AgentKind::RandomScan}) {
    GazeAgentConfig cfg = GazeAgentConfig::defaults_for(kind);
    cfg.seed = 1234;
    GazeAgent a(cfg, {0.5, 0.5}, {{0.1, 0.1}, {0.9, 0.9}});
    GazeAgent b(cfg, {0.5, 0.5}, {{0.1, 0.1}, {0.9, 0.9}});
    const ActiveCue cue{0, {0.7, 0.3}, Urgency::Low, 0.0, 0.0};
    EXPECT_EQ(drive(a, 600, cue), drive(b, 600, cue));
  }
}

TEST(Agent, StaysInUnitSquare)
{
  GazeAgentConfig cfg;
  cfg.landing_noise_sigma = 0.2;
  GazeAgent agent(cfg, {0.0, 1.0}, {});
  const ActiveCue cue{0, {1.0, 0.0}, Urgency::Low, 0.0, 0.0};
  for (const auto & s : drive(agent, 300, cue)) {
    EXPECT_TRUE(in_unit_square(s.point));
  }
}

}  // namespace
}  // namespace tcue
