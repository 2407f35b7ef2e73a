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

#ifndef TCUE__CLOCK_HPP_
#define TCUE__CLOCK_HPP_

#include <cstdint>

namespace tcue
{

/// Slack for comparing engine times built as tick / tick_hz. Far below one
/// tick at any sane rate, far above accumulated rounding.
inline constexpr double kTimeEpsilon = 1e-9;

/// True once `now` has reached `deadline`, tolerating rounding.
inline bool reached(double now, double deadline)
{
  return now + kTimeEpsilon >= deadline;
}

/// Engine time of tick `index`.
inline double tick_time(std::int64_t index, int tick_hz)
{
  return static_cast<double>(index) / static_cast<double>(tick_hz);
}

}  // namespace tcue

#endif  // TCUE__CLOCK_HPP_
