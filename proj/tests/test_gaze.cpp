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
#include "tcue/gaze.hpp"

namespace tcue
{
namespace
{

std::vector<GazeSample> constant(Point2 p, int n, double t0 = 0.0)
{
  std::vector<GazeSample> out;
  for (int k = 0; k < n; ++k) {
    out.push_back({t0 + k / 60.0, p, true});
  }
  return out;
}

TEST(DetectFixation, ConstantPointTwoHundredMs)
{
  // 13 samples at 60 Hz span 0.2 s.
  const auto fix = detect_fixation(constant({0.4, 0.4}, 13));
  ASSERT_TRUE(fix);
  EXPECT_NEAR(fix->centroid.x, 0.4, 1e-15);
  EXPECT_NEAR(fix->centroid.y, 0.4, 1e-15);
  EXPECT_NEAR(fix->duration_s, 0.2, 1e-12);
  EXPECT_EQ(fix->dispersion, 0.0);
  EXPECT_EQ(fix->first_index, 0u);
  EXPECT_EQ(fix->last_index, 12u);
}

TEST(DetectFixation, TooShort)
{
  EXPECT_FALSE(detect_fixation(constant({0.4, 0.4}, 6)));
  EXPECT_TRUE(detect_fixation(constant({0.4, 0.4}, 7)));
}

TEST(DetectFixation, SweepHasNoFixation)
{
  std::vector<GazeSample> s;
  for (int k = 0; k < 60; ++k) {
    s.push_back({k / 60.0, {k / 60.0, 0.5}, true});
  }
  EXPECT_FALSE(detect_fixation(s));
}

TEST(DetectFixation, TailOnlyAfterJump)
{
  auto s = constant({0.1, 0.1}, 30);
  const auto tail = constant({0.8, 0.8}, 10, 30 / 60.0);
  s.insert(s.end(), tail.begin(), tail.end());
  const auto fix = detect_fixation(s);
  ASSERT_TRUE(fix);
  EXPECT_EQ(fix->first_index, 30u);
  EXPECT_NEAR(fix->centroid.x, 0.8, 1e-12);
  EXPECT_NEAR(fix->centroid.y, 0.8, 1e-12);
}

TEST(DetectFixation, InvalidTailOrBreak)
{
  auto s = constant({0.4, 0.4}, 20);
  s.back().valid = false;
  EXPECT_FALSE(detect_fixation(s));
  s.back().valid = true;
  s[15].valid = false;
  EXPECT_FALSE(detect_fixation(s));  // only 4 samples after the gap
}

TEST(DetectFixation, UnorderedThrows)
{
  auto s = constant({0.4, 0.4}, 10);
  std::swap(s[2], s[3]);
  EXPECT_THROW(detect_fixation(s), UnorderedSamples);
  EXPECT_THROW(segment_fixations(s), UnorderedSamples);
}

TEST(SegmentFixations, MatchesWindowScanOracle)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = oracle::random_stream(rng, 2000);
    const auto got = segment_fixations(s);
    const auto want = oracle::fixations(s, 0.1, 0.03);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].first_index, want[i].first);
      EXPECT_EQ(got[i].last_index, want[i].last);
      EXPECT_NEAR(got[i].centroid.x, want[i].centroid.x, 1e-12);
      EXPECT_NEAR(got[i].centroid.y, want[i].centroid.y, 1e-12);
    }
  }
}

TEST(TargetFixation, Threshold)
{
  FixationState f;
  f.duration_s = 2.5;
  EXPECT_TRUE(detect_target_fixation(f));
  f.duration_s = 1.9;
  EXPECT_FALSE(detect_target_fixation(f));
  f.duration_s = 2.0;
  EXPECT_TRUE(detect_target_fixation(f));
}

TEST(TargetFixation, FirstRaisedAtTwoSeconds)
{
  // 2.5 s stationary stream; check the flag sample by sample.
  const auto s = constant({0.3, 0.7}, 151);
  std::optional<double> raised;
  for (std::size_t k = 1; k <= s.size() && !raised; ++k) {
    const auto fix = detect_fixation(std::span(s.data(), k));
    if (fix && detect_target_fixation(*fix)) {
      raised = s[k - 1].t;
    }
  }
  ASSERT_TRUE(raised);
  EXPECT_NEAR(*raised, 2.0, 1.0 / 60.0);
}

TEST(GazeTrace, RoundTripIsExact)
{
  std::mt19937_64 rng(3);
  const auto s = oracle::random_stream(rng, 500);
  const auto text = write_gaze_trace(s);
  const auto back = read_gaze_trace(text);
  EXPECT_EQ(back, s);
  EXPECT_EQ(write_gaze_trace(back), text);
}

TEST(GazeTrace, RejectsGarbage)
{
  EXPECT_THROW(read_gaze_trace("0,0.5,0.5\n"), ParseError);
  EXPECT_THROW(read_gaze_trace("0,0.5,x,1\n"), ParseError);
  EXPECT_THROW(read_gaze_trace("1,0.5,0.5,1\n0,0.5,0.5,1\n"), UnorderedSamples);
  EXPECT_TRUE(read_gaze_trace("").empty());
}

}  // namespace
}  // namespace tcue
