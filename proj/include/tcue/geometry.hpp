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

#ifndef TCUE__GEOMETRY_HPP_
#define TCUE__GEOMETRY_HPP_

#include <algorithm>
#include <cmath>

namespace tcue
{

/// Point on the normalized windshield plane. Origin top-left, x rightward,
/// y downward, both in [0,1] for valid positions.
struct Point2
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline double squared_distance(const Point2 & a, const Point2 & b)
{
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point2 & a, const Point2 & b)
{
  return std::sqrt(squared_distance(a, b));
}

inline bool in_unit_square(const Point2 & p)
{
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

inline Point2 clamp_unit(const Point2 & p)
{
  return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
}

/// Row-major comparison on (y, x); the tie-break order used across the engine.
inline bool less_yx(const Point2 & a, const Point2 & b)
{
  if (a.y != b.y) {
    return a.y < b.y;
  }
  return a.x < b.x;
}

}  // namespace tcue

#endif  // TCUE__GEOMETRY_HPP_
