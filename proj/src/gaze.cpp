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

#include "tcue/gaze.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tcue/clock.hpp"
#include "tcue/errors.hpp"

namespace tcue
{

namespace
{

void check_ordered(std::span<const GazeSample> samples)
{
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t < samples[i - 1].t) {
      throw UnorderedSamples(
        "gaze sample " + std::to_string(i) + " is earlier than its predecessor");
    }
  }
}

/// Running bounding box of a growing sample window.
struct Extent
{
  double min_x;
  double max_x;
  double min_y;
  double max_y;

  explicit Extent(const Point2 & p)
  : min_x(p.x), max_x(p.x), min_y(p.y), max_y(p.y) {}

  Extent with(const Point2 & p) const
  {
    Extent e = *this;
    e.min_x = std::min(e.min_x, p.x);
    e.max_x = std::max(e.max_x, p.x);
    e.min_y = std::min(e.min_y, p.y);
    e.max_y = std::max(e.max_y, p.y);
    return e;
  }

  double dispersion() const { return (max_x - min_x) + (max_y - min_y); }
};

FixationState make_fixation(
  std::span<const GazeSample> samples, std::size_t first, std::size_t last, double dispersion)
{
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    sx += samples[i].point.x;
    sy += samples[i].point.y;
  }
  const auto n = static_cast<double>(last - first + 1);
  FixationState fix;
  fix.centroid = {sx / n, sy / n};
  fix.start_t = samples[first].t;
  fix.duration_s = samples[last].t - samples[first].t;
  fix.dispersion = dispersion;
  fix.first_index = first;
  fix.last_index = last;
  return fix;
}

}  // namespace

std::optional<FixationState> detect_fixation(
  std::span<const GazeSample> window, const FixationConfig & cfg)
{
  check_ordered(window);
  if (window.empty() || !window.back().valid) {
    return std::nullopt;
  }
  const std::size_t last = window.size() - 1;
  std::size_t first = last;
  Extent extent(window[last].point);
  while (first > 0) {
    const GazeSample & prev = window[first - 1];
    if (!prev.valid) {
      break;
    }
    const Extent grown = extent.with(prev.point);
    if (grown.dispersion() > cfg.disp_threshold) {
      break;
    }
    extent = grown;
    --first;
  }
  if (!reached(window[last].t - window[first].t, cfg.min_fix_duration_s)) {
    return std::nullopt;
  }
  return make_fixation(window, first, last, extent.dispersion());
}

std::vector<FixationState> segment_fixations(
  std::span<const GazeSample> stream, const FixationConfig & cfg)
{
  check_ordered(stream);
  std::vector<FixationState> out;
  std::size_t start = 0;
  while (start < stream.size()) {
    if (!stream[start].valid) {
      ++start;
      continue;
    }
    Extent extent(stream[start].point);
    std::size_t end = start;
    while (end + 1 < stream.size() && stream[end + 1].valid) {
      const Extent grown = extent.with(stream[end + 1].point);
      if (grown.dispersion() > cfg.disp_threshold) {
        break;
      }
      extent = grown;
      ++end;
    }
    if (reached(stream[end].t - stream[start].t, cfg.min_fix_duration_s)) {
      out.push_back(make_fixation(stream, start, end, extent.dispersion()));
      start = end + 1;
    } else {
      ++start;
    }
  }
  return out;
}

bool detect_target_fixation(const FixationState & fix, const TargetFixationConfig & cfg)
{
  return reached(fix.duration_s, cfg.target_fix_duration_s);
}

std::string write_gaze_trace(const GazeTrace & trace)
{
  std::string out;
  char buf[128];
  for (const auto & s : trace) {
    const int n = std::snprintf(
      buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", s.t, s.point.x, s.point.y, s.valid ? 1 : 0);
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

namespace
{

double parse_field(std::string_view field, std::size_t line_no)
{
  double value = 0.0;
  const auto * begin = field.data();
  const auto * end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("gaze trace line " + std::to_string(line_no) + ": bad number");
  }
  return value;
}

}  // namespace

GazeTrace read_gaze_trace(std::string_view text)
{
  GazeTrace trace;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.empty()) {
      continue;
    }
    std::string_view fields[4];
    std::size_t count = 0;
    while (count < 4) {
      const auto comma = line.find(',');
      fields[count++] = line.substr(0, comma);
      if (comma == std::string_view::npos) {
        line = {};
        break;
      }
      line = line.substr(comma + 1);
    }
    if (count != 4 || !line.empty()) {
      throw ParseError("gaze trace line " + std::to_string(line_no) + ": expected t,x,y,valid");
    }
    GazeSample s;
    s.t = parse_field(fields[0], line_no);
    s.point = {parse_field(fields[1], line_no), parse_field(fields[2], line_no)};
    if (fields[3] == "1") {
      s.valid = true;
    } else if (fields[3] == "0") {
      s.valid = false;
    } else {
      throw ParseError("gaze trace line " + std::to_string(line_no) + ": valid must be 0 or 1");
    }
    trace.push_back(s);
  }
  check_ordered(trace);
  return trace;
}

void save_gaze_trace(const GazeTrace & trace, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write gaze trace " + path.string());
  }
  out << write_gaze_trace(trace);
  if (!out) {
    throw IoError("failed writing gaze trace " + path.string());
  }
}

GazeTrace load_gaze_trace(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open gaze trace " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_gaze_trace(buf.str());
}

}  // namespace tcue
