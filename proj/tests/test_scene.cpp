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

#include <filesystem>
#include <fstream>

#include "tcue/errors.hpp"
#include "tcue/scene.hpp"

namespace fs = std::filesystem;

namespace tcue
{
namespace
{

constexpr const char * kScene = R"({
  "id": "demo",
  "duration_s": 12.5,
  "distraction_point": [0.2, 0.9],
  "hazard": {"position": [0.7, 0.4], "severity": "High"},
  "objects": [
    {"id": "car", "centroid": [0.3, 0.4], "half_extent": [0.05, 0.03],
     "salience_weight": 0.8, "moving": true}
  ]
})";

TEST(Scene, LoadsAllFields)
{
  const auto s = load_scene(kScene);
  EXPECT_EQ(s.id, "demo");
  EXPECT_DOUBLE_EQ(s.duration_s, 12.5);
  EXPECT_EQ(s.distraction_point, (Point2{0.2, 0.9}));
  EXPECT_EQ(s.hazard.severity, Severity::High);
  ASSERT_EQ(s.objects.size(), 1u);
  EXPECT_EQ(s.objects[0].id, "car");
  EXPECT_EQ(s.objects[0].half_extent, (Point2{0.05, 0.03}));
  EXPECT_TRUE(s.objects[0].moving);
}

TEST(Scene, SaveLoadRoundTrip)
{
  const auto s = load_scene(kScene);
  EXPECT_EQ(load_scene(save_scene(s)), s);
  EXPECT_EQ(save_scene(load_scene(save_scene(s))), save_scene(s));
}

TEST(Scene, ObjectsKeyIsOptional)
{
  const auto s = load_scene(
    R"({"id":"e","duration_s":5,"distraction_point":[0.5,0.5],
        "hazard":{"position":[0.1,0.1],"severity":"Low"}})");
  EXPECT_TRUE(s.objects.empty());
}

TEST(Scene, ParseErrors)
{
  EXPECT_THROW(load_scene("{"), ParseError);
  EXPECT_THROW(load_scene("[]"), ParseError);
  EXPECT_THROW(load_scene(R"({"id":"x"})"), ParseError);
  EXPECT_THROW(
    load_scene(
      R"({"id":"e","duration_s":"5","distraction_point":[0.5,0.5],
          "hazard":{"position":[0.1,0.1],"severity":"Low"}})"),
    ParseError);
}

TEST(Scene, ValidationErrors)
{
  auto s = load_scene(kScene);
  s.hazard.position = {1.2, 0.5};
  EXPECT_THROW(validate_scene(s), ValidationError);

  s = load_scene(kScene);
  s.duration_s = 0.0;
  EXPECT_THROW(validate_scene(s), ValidationError);

  s = load_scene(kScene);
  s.objects.push_back(s.objects[0]);
  EXPECT_THROW(validate_scene(s), ValidationError);

  EXPECT_THROW(
    load_scene(
      R"({"id":"e","duration_s":5,"distraction_point":[0.5,0.5],
          "hazard":{"position":[0.1,0.1],"severity":"Extreme"}})"),
    InputError);
}

TEST(SceneLibrary, LoadsDirectorySortedAndReportsMissing)
{
  const auto dir = fs::temp_directory_path() / "tcue_scene_lib_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto b = load_scene(kScene);
  b.id = "b_scene";
  auto a = b;
  a.id = "a_scene";
  std::ofstream(dir / "z.json") << save_scene(b);
  std::ofstream(dir / "y.json") << save_scene(a);
  std::ofstream(dir / "notes.txt") << "ignored";

  const auto lib = SceneLibrary::from_directory(dir);
  EXPECT_EQ(lib.ids(), (std::vector<std::string>{"a_scene", "b_scene"}));
  EXPECT_TRUE(lib.contains("a_scene"));
  EXPECT_EQ(lib.get("b_scene"), b);
  EXPECT_THROW(lib.get("nope"), SceneNotFound);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace tcue
