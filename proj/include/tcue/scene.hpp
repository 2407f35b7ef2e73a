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

#ifndef TCUE__SCENE_HPP_
#define TCUE__SCENE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tcue/geometry.hpp"

namespace tcue
{

enum class Severity { Low, Medium, High };

std::string_view to_string(Severity severity);
Severity severity_from_string(std::string_view text);

struct SceneObject
{
  std::string id;
  Point2 centroid;
  /// Axis-aligned half size; each component in (0, 0.5].
  Point2 half_extent;
  /// In (0, 1].
  double salience_weight{1.0};
  bool moving{false};

  friend bool operator==(const SceneObject &, const SceneObject &) = default;
};

struct HazardSpec
{
  Point2 position;
  Severity severity{Severity::Medium};

  friend bool operator==(const HazardSpec &, const HazardSpec &) = default;
};

/// One takeover scenario. Immutable once loaded.
struct SceneSpec
{
  std::string id;
  std::vector<SceneObject> objects;
  HazardSpec hazard;
  Point2 distraction_point;
  double duration_s{20.0};

  friend bool operator==(const SceneSpec &, const SceneSpec &) = default;
};

/// Checks every scene invariant; throws ValidationError naming the first
/// violation.
void validate_scene(const SceneSpec & scene);

/// Parses a scenario document (JSON). Throws ParseError for malformed text
/// or wrong field types, ValidationError for range violations.
SceneSpec load_scene(std::string_view document);

/// Canonical document: keys sorted, two-space indent, trailing newline.
std::string save_scene(const SceneSpec & scene);

SceneSpec load_scene_file(const std::filesystem::path & path);

/// Scenes available to the harness and the session server, keyed by id.
class SceneLibrary
{
public:
  SceneLibrary() = default;

  /// Loads every `*.json` file in `dir`. Throws on duplicate ids.
  static SceneLibrary from_directory(const std::filesystem::path & dir);

  void add(SceneSpec scene);
  bool contains(const std::string & id) const;
  /// Throws SceneNotFound.
  const SceneSpec & get(const std::string & id) const;
  std::vector<std::string> ids() const;

private:
  std::map<std::string, SceneSpec> scenes_;
};

}  // namespace tcue

#endif  // TCUE__SCENE_HPP_
