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

#ifndef TCUE__SALIENCY_HPP_
#define TCUE__SALIENCY_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcue/geometry.hpp"
#include "tcue/scene.hpp"

namespace tcue
{

enum class GridRole { Base, Filtered };

struct GridSize
{
  int width{64};
  int height{64};
};

/// Non-negative attention field over the windshield plane, row-major.
/// Peak-normalized: the maximum is 1 unless every cell is zero.
class SaliencyGrid
{
public:
  SaliencyGrid(int width, int height, GridRole role = GridRole::Base);
  /// Takes raw non-negative values and peak-normalizes them.
  SaliencyGrid(int width, int height, std::vector<double> raw, GridRole role);

  int width() const { return width_; }
  int height() const { return height_; }
  GridRole role() const { return role_; }
  std::span<const double> values() const { return values_; }

  double at(int col, int row) const { return values_[index(col, row)]; }
  /// Center of cell (col, row): ((col + 0.5) / W, (row + 0.5) / H).
  Point2 cell_center(int col, int row) const;
  /// Cell containing `p`; coordinates of exactly 1.0 map to the last cell.
  std::pair<int, int> cell_of(const Point2 & p) const;

  bool is_zero() const;

  friend bool operator==(const SaliencyGrid &, const SaliencyGrid &) = default;

private:
  std::size_t index(int col, int row) const
  {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  GridRole role_;
  std::vector<double> values_;
};

struct WaypointConfig
{
  double tau{0.35};
  double min_sep{0.08};
  int k_max{4};
  double hazard_exclusion{0.05};
  double snap_radius{0.04};
};

/// Everything the saliency stage needs; echoed into run records.
struct SaliencyConfig
{
  GridSize grid;
  double sigma_h{0.18};
  WaypointConfig waypoints;
};

/// A high-value region of the hazard-filtered grid.
struct Waypoint
{
  Point2 position;
  /// Filtered-grid value of the source cell.
  double score{0.0};
  std::optional<std::string> snapped_object_id;
  int source_col{0};
  int source_row{0};

  friend bool operator==(const Waypoint &, const Waypoint &) = default;
};

/// Peak-normalized sum of one isotropic Gaussian per object. Amplitude is
/// salience_weight (x1.5 when moving), sigma the larger half extent.
/// Throws GridTooSmall below 8x8.
SaliencyGrid base_saliency(const SceneSpec & scene, GridSize size = {});

/// Multiplies `base` by a Gaussian prior centered on the hazard, then
/// peak-normalizes. Throws NonPositiveSigma when sigma_h <= 0.
SaliencyGrid fuse_hazard_prior(const SaliencyGrid & base, const Point2 & hazard, double sigma_h);

/// Selects up to k_max local maxima (8-neighborhood, value >= every
/// neighbor) scoring at least tau.
///
/// Candidates are visited in descending value, ties by ascending cell
/// (row, col). Each candidate is first snapped to the nearest object
/// centroid within snap_radius, then rejected if either its cell center or
/// its final position lies within hazard_exclusion of the hazard, or if its
/// final position is closer than min_sep to an already accepted waypoint.
/// The result is in acceptance order.
std::vector<Waypoint> extract_waypoints(
  const SaliencyGrid & filtered, const SceneSpec & scene, const WaypointConfig & cfg = {});

/// Plain ASCII graymap (P2, maxval 255) for eyeballing grids.
std::string to_pgm(const SaliencyGrid & grid);

}  // namespace tcue

#endif  // TCUE__SALIENCY_HPP_
