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

#include "tcue/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "tcue/errors.hpp"

namespace tcue
{

using detail::Json;

std::string_view to_string(Severity severity)
{
  switch (severity) {
    case Severity::Low:
      return "Low";
    case Severity::Medium:
      return "Medium";
    case Severity::High:
      return "High";
  }
  return "Medium";
}

Severity severity_from_string(std::string_view text)
{
  if (text == "Low") {
    return Severity::Low;
  }
  if (text == "Medium") {
    return Severity::Medium;
  }
  if (text == "High") {
    return Severity::High;
  }
  throw ValidationError("hazard.severity must be one of Low, Medium, High");
}

namespace
{

void require_in_range(const Point2 & p, const std::string & what)
{
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !in_unit_square(p)) {
    throw ValidationError(what + " out of range");
  }
}

bool half_extent_ok(double v)
{
  return std::isfinite(v) && v > 0.0 && v <= 0.5;
}

}  // namespace

void validate_scene(const SceneSpec & scene)
{
  if (scene.id.empty()) {
    throw ValidationError("id must be non-empty");
  }
  if (!std::isfinite(scene.duration_s) || scene.duration_s <= 0.0) {
    throw ValidationError("duration_s must be positive");
  }
  require_in_range(scene.hazard.position, "hazard.position");
  require_in_range(scene.distraction_point, "distraction_point");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const auto & obj = scene.objects[i];
    const std::string where = "objects[" + std::to_string(i) + "]";
    if (obj.id.empty()) {
      throw ValidationError(where + ".id must be non-empty");
    }
    if (!seen.insert(obj.id).second) {
      throw ValidationError(where + ".id duplicates '" + obj.id + "'");
    }
    require_in_range(obj.centroid, where + ".centroid");
    if (!half_extent_ok(obj.half_extent.x) || !half_extent_ok(obj.half_extent.y)) {
      throw ValidationError(where + ".half_extent out of range");
    }
    if (!std::isfinite(obj.salience_weight) || obj.salience_weight <= 0.0 ||
      obj.salience_weight > 1.0)
    {
      throw ValidationError(where + ".salience_weight out of range");
    }
    // With the centroid inside the unit square the box always intersects it;
    // the check stays explicit so the invariant survives a looser centroid rule.
    const bool intersects = obj.centroid.x + obj.half_extent.x >= 0.0 &&
      obj.centroid.x - obj.half_extent.x <= 1.0 && obj.centroid.y + obj.half_extent.y >= 0.0 &&
      obj.centroid.y - obj.half_extent.y <= 1.0;
    if (!intersects) {
      throw ValidationError(where + " bounding box outside the windshield plane");
    }
  }
}

SceneSpec load_scene(std::string_view document)
{
  Json doc;
  try {
    doc = Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error & e) {
    throw ParseError(std::string("scenario document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("scenario document must be a JSON object");
  }

  using namespace detail;
  SceneSpec scene;
  scene.id = as_string(require(doc, "id", ""), "id");
  scene.duration_s = as_number(require(doc, "duration_s", ""), "duration_s");

  const Json & hazard = require(doc, "hazard", "");
  scene.hazard.position = as_point(require(hazard, "position", "hazard"), "hazard.position");
  scene.hazard.severity =
    severity_from_string(as_string(require(hazard, "severity", "hazard"), "hazard.severity"));

  scene.distraction_point = as_point(require(doc, "distraction_point", ""), "distraction_point");

  if (const auto it = doc.find("objects"); it != doc.end()) {
    if (!it->is_array()) {
      throw ParseError("objects must be an array");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json & o = (*it)[i];
      const std::string where = "objects[" + std::to_string(i) + "]";
      SceneObject obj;
      obj.id = as_string(require(o, "id", where), where + ".id");
      obj.centroid = as_point(require(o, "centroid", where), where + ".centroid");
      obj.half_extent = as_point(require(o, "half_extent", where), where + ".half_extent");
      obj.salience_weight =
        as_number(require(o, "salience_weight", where), where + ".salience_weight");
      obj.moving = as_bool(require(o, "moving", where), where + ".moving");
      scene.objects.push_back(std::move(obj));
    }
  }

  validate_scene(scene);
  return scene;
}

std::string save_scene(const SceneSpec & scene)
{
  using detail::point_json;
  Json objects = Json::array();
  for (const auto & obj : scene.objects) {
    objects.push_back(
      {{"id", obj.id},
        {"centroid", point_json(obj.centroid)},
        {"half_extent", point_json(obj.half_extent)},
        {"salience_weight", obj.salience_weight},
        {"moving", obj.moving}});
  }
  // nlohmann::json objects are std::map backed, so keys serialize sorted.
  const Json doc = {
    {"id", scene.id},
    {"duration_s", scene.duration_s},
    {"hazard",
      {{"position", point_json(scene.hazard.position)},
        {"severity", std::string(to_string(scene.hazard.severity))}}},
    {"distraction_point", point_json(scene.distraction_point)},
    {"objects", std::move(objects)}};
  return doc.dump(2) + "\n";
}

SceneSpec load_scene_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scene(buf.str());
}

SceneLibrary SceneLibrary::from_directory(const std::filesystem::path & dir)
{
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("scene directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  SceneLibrary lib;
  for (const auto & file : files) {
    lib.add(load_scene_file(file));
  }
  return lib;
}

void SceneLibrary::add(SceneSpec scene)
{
  validate_scene(scene);
  const std::string id = scene.id;
  if (!scenes_.emplace(id, std::move(scene)).second) {
    throw ValidationError("duplicate scene id '" + id + "'");
  }
}

bool SceneLibrary::contains(const std::string & id) const
{
  return scenes_.count(id) != 0;
}

const SceneSpec & SceneLibrary::get(const std::string & id) const
{
  const auto it = scenes_.find(id);
  if (it == scenes_.end()) {
    throw SceneNotFound("scene not found: " + id);
  }
  return it->second;
}

std::vector<std::string> SceneLibrary::ids() const
{
  std::vector<std::string> out;
  out.reserve(scenes_.size());
  for (const auto & [id, scene] : scenes_) {
    out.push_back(id);
  }
  return out;
}

}  // namespace tcue
