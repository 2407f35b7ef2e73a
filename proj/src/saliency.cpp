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

#include "tcue/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcue/errors.hpp"

namespace tcue
{

namespace
{

void peak_normalize(std::vector<double> & values)
{
  const auto peak = std::max_element(values.begin(), values.end());
  if (peak == values.end() || *peak <= 0.0) {
    return;
  }
  const double scale = *peak;
  for (auto & v : values) {
    v /= scale;
  }
}

}  // namespace

SaliencyGrid::SaliencyGrid(int width, int height, GridRole role)
: width_(width), height_(height), role_(role),
  values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0)
{
  if (width < 1 || height < 1) {
    throw GridTooSmall("grid dimensions must be positive");
  }
}

SaliencyGrid::SaliencyGrid(int width, int height, std::vector<double> raw, GridRole role)
: width_(width), height_(height), role_(role), values_(std::move(raw))
{
  if (width < 1 || height < 1) {
    throw GridTooSmall("grid dimensions must be positive");
  }
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ValidationError("grid value count does not match dimensions");
  }
  for (const double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("saliency values must be finite and non-negative");
    }
  }
  peak_normalize(values_);
}

Point2 SaliencyGrid::cell_center(int col, int row) const
{
  return {(col + 0.5) / width_, (row + 0.5) / height_};
}

std::pair<int, int> SaliencyGrid::cell_of(const Point2 & p) const
{
  const int col = std::clamp(static_cast<int>(std::floor(p.x * width_)), 0, width_ - 1);
  const int row = std::clamp(static_cast<int>(std::floor(p.y * height_)), 0, height_ - 1);
  return {col, row};
}

bool SaliencyGrid::is_zero() const
{
  return std::all_of(values_.begin(), values_.end(), [](double v) {return v == 0.0;});
}

SaliencyGrid base_saliency(const SceneSpec & scene, GridSize size)
{
  if (size.width < 8 || size.height < 8) {
    throw GridTooSmall(
      "saliency grid must be at least 8x8, got " + std::to_string(size.width) + "x" +
      std::to_string(size.height));
  }
  std::vector<double> raw(static_cast<std::size_t>(size.width) * size.height, 0.0);
  for (const auto & obj : scene.objects) {
    const double amplitude = obj.salience_weight * (obj.moving ? 1.5 : 1.0);
    const double sigma = std::max(obj.half_extent.x, obj.half_extent.y);
    const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
    for (int row = 0; row < size.height; ++row) {
      const double cy = (row + 0.5) / size.height;
      for (int col = 0; col < size.width; ++col) {
        const double cx = (col + 0.5) / size.width;
        const double d2 = squared_distance({cx, cy}, obj.centroid);
        raw[static_cast<std::size_t>(row) * size.width + col] +=
          amplitude * std::exp(-d2 * inv_two_var);
      }
    }
  }
  return SaliencyGrid(size.width, size.height, std::move(raw), GridRole::Base);
}

SaliencyGrid fuse_hazard_prior(const SaliencyGrid & base, const Point2 & hazard, double sigma_h)
{
  if (!(sigma_h > 0.0)) {
    throw NonPositiveSigma("sigma_h must be positive");
  }
  const double inv_two_var = 1.0 / (2.0 * sigma_h * sigma_h);
  std::vector<double> raw(base.values().begin(), base.values().end());
  for (int row = 0; row < base.height(); ++row) {
    for (int col = 0; col < base.width(); ++col) {
      const double d2 = squared_distance(base.cell_center(col, row), hazard);
      raw[static_cast<std::size_t>(row) * base.width() + col] *= std::exp(-d2 * inv_two_var);
    }
  }
  return SaliencyGrid(base.width(), base.height(), std::move(raw), GridRole::Filtered);
}

namespace
{

bool is_local_max(const SaliencyGrid & g, int col, int row)
{
  const double v = g.at(col, row);
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) {
        continue;
      }
      const int c = col + dc;
      const int r = row + dr;
      if (c < 0 || r < 0 || c >= g.width() || r >= g.height()) {
        continue;
      }
      if (g.at(c, r) > v) {
        return false;
      }
    }
  }
  return true;
}

struct Candidate
{
  double value;
  int col;
  int row;
};

}  // namespace

std::vector<Waypoint> extract_waypoints(
  const SaliencyGrid & filtered, const SceneSpec & scene, const WaypointConfig & cfg)
{
  std::vector<Waypoint> out;
  if (cfg.k_max <= 0) {
    return out;
  }

  std::vector<Candidate> candidates;
  for (int row = 0; row < filtered.height(); ++row) {
    for (int col = 0; col < filtered.width(); ++col) {
      const double v = filtered.at(col, row);
      if (v >= cfg.tau && v > 0.0 && is_local_max(filtered, col, row)) {
        candidates.push_back({v, col, row});
      }
    }
  }
  // Row-major scan order already gives ascending (row, col) among equals.
  std::stable_sort(
    candidates.begin(), candidates.end(),
    [](const Candidate & a, const Candidate & b) {return a.value > b.value;});

  const Point2 hazard = scene.hazard.position;
  for (const auto & cand : candidates) {
    if (static_cast<int>(out.size()) >= cfg.k_max) {
      break;
    }
    const Point2 center = filtered.cell_center(cand.col, cand.row);

    Waypoint wp;
    wp.position = center;
    wp.score = cand.value;
    wp.source_col = cand.col;
    wp.source_row = cand.row;

    double best = cfg.snap_radius;
    for (const auto & obj : scene.objects) {
      const double d = distance(center, obj.centroid);
      if (d <= best && (!wp.snapped_object_id || d < best)) {
        best = d;
        wp.position = obj.centroid;
        wp.snapped_object_id = obj.id;
      }
    }

    if (distance(center, hazard) <= cfg.hazard_exclusion ||
      distance(wp.position, hazard) <= cfg.hazard_exclusion)
    {
      continue;
    }
    const bool too_close = std::any_of(
      out.begin(), out.end(),
      [&](const Waypoint & kept) {return distance(kept.position, wp.position) < cfg.min_sep;});
    if (too_close) {
      continue;
    }
    out.push_back(std::move(wp));
  }
  return out;
}

std::string to_pgm(const SaliencyGrid & grid)
{
  std::ostringstream os;
  os << "P2\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (col > 0) {
        os << ' ';
      }
      os << static_cast<int>(std::lround(std::clamp(grid.at(col, row), 0.0, 1.0) * 255.0));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace tcue
