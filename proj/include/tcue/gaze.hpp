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

#ifndef TCUE__GAZE_HPP_
#define TCUE__GAZE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcue/geometry.hpp"

namespace tcue
{

struct GazeSample
{
  /// Seconds since scenario start.
  double t{0.0};
  Point2 point;
  /// False on blink or track loss.
  bool valid{true};

  friend bool operator==(const GazeSample &, const GazeSample &) = default;
};

struct FixationConfig
{
  double min_fix_duration_s{0.1};
  double disp_threshold{0.03};
};

/// A dispersion-bounded gaze dwell. Indices refer to the analyzed window.
struct FixationState
{
  Point2 centroid;
  double start_t{0.0};
  double duration_s{0.0};
  /// (max x - min x) + (max y - min y) over member samples.
  double dispersion{0.0};
  std::size_t first_index{0};
  std::size_t last_index{0};

  friend bool operator==(const FixationState &, const FixationState &) = default;
};

struct TargetFixationConfig
{
  double target_fix_duration_s{2.0};
  /// Association radius between a fixation and the distraction point.
  double radius{0.05};
};

/// Longest run of valid samples ending at the window tail whose dispersion
/// stays within the threshold, if it lasts at least min_fix_duration_s.
/// Throws UnorderedSamples when timestamps decrease.
std::optional<FixationState> detect_fixation(
  std::span<const GazeSample> window, const FixationConfig & cfg = {});

/// Dispersion-threshold (I-DT) segmentation of a whole stream. From each
/// start sample the window grows while the dispersion stays within the
/// threshold; a window lasting min_fix_duration_s is emitted and scanning
/// resumes after it, otherwise the start advances by one sample. Invalid
/// samples never belong to a fixation.
std::vector<FixationState> segment_fixations(
  std::span<const GazeSample> stream, const FixationConfig & cfg = {});

bool detect_target_fixation(const FixationState & fix, const TargetFixationConfig & cfg = {});

/// Recorded gaze stream, one sample per engine tick.
using GazeTrace = std::vector<GazeSample>;

/// Line-delimited `t,x,y,valid` records (valid as 0/1), full precision.
std::string write_gaze_trace(const GazeTrace & trace);
/// Throws ParseError on malformed lines, UnorderedSamples on time regression.
GazeTrace read_gaze_trace(std::string_view text);

void save_gaze_trace(const GazeTrace & trace, const std::filesystem::path & path);
GazeTrace load_gaze_trace(const std::filesystem::path & path);

}  // namespace tcue

#endif  // TCUE__GAZE_HPP_
