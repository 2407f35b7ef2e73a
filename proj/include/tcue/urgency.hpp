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

#ifndef TCUE__URGENCY_HPP_
#define TCUE__URGENCY_HPP_

#include <string_view>

namespace tcue
{

/// Ordered: comparisons follow escalation.
enum class Urgency { Low = 0, Medium = 1, High = 2 };

inline std::string_view to_string(Urgency u)
{
  switch (u) {
    case Urgency::Low:
      return "Low";
    case Urgency::Medium:
      return "Medium";
    case Urgency::High:
      return "High";
  }
  return "Low";
}

}  // namespace tcue

#endif  // TCUE__URGENCY_HPP_
