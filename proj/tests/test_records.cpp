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
#include <sstream>

#include <json.hpp>

#include "tcue/errors.hpp"
#include "tcue/records.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tcue
{
namespace
{

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult sample_run(std::uint64_t seed = 1)
{
  RunConfig cfg;
  cfg.seed = seed;
  return run_scenario(cfg, load_scene_file(fs::path(TCUE_SCENES_DIR) / "urban_crossing.json"));
}

TEST(RunConfigJson, PartialOverridesAndAgentKindDefaults)
{
  const auto cfg = parse_run_config(
    R"({"seed": 7, "agent": {"kind": "Distracted"}, "escalation": {"dwell_s": 0.4}})");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.agent.kind, AgentKind::Distracted);
  EXPECT_DOUBLE_EQ(cfg.agent.reaction_latency_s, 0.8);
  EXPECT_DOUBLE_EQ(cfg.escalation.dwell_s, 0.4);
  EXPECT_DOUBLE_EQ(cfg.escalation.t_medium_s, 2.0);

  const auto tuned = parse_run_config(
    R"({"agent": {"kind": "Distracted", "reaction_latency_s": 1.1}})");
  EXPECT_DOUBLE_EQ(tuned.agent.reaction_latency_s, 1.1);
}

TEST(RunConfigJson, Errors)
{
  EXPECT_THROW(parse_run_config("{"), ParseError);
  EXPECT_THROW(parse_run_config(R"({"sed": 1})"), ValidationError);
  EXPECT_THROW(parse_run_config(R"({"agent": {"kind": "Nope"}})"), ValidationError);
  EXPECT_THROW(parse_run_config(R"({"tick_hz": "fast"})"), ParseError);
  EXPECT_THROW(parse_run_config(R"({"tick_hz": -1})"), ValidationError);
}

TEST(RunConfigJson, EchoRoundTrips)
{
  RunConfig cfg;
  cfg.scene_id = "x";
  cfg.seed = 99;
  cfg.mode = RunMode::Unguided;
  cfg.agent = GazeAgentConfig::defaults_for(AgentKind::RandomScan);
  cfg.escalation.beep_period_s = 0.25;
  cfg.saliency.waypoints.k_max = 3;
  const auto back = run_config_from_json(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(RunRecord, ShapeAndSchema)
{
  const auto line = run_record_line(sample_run());
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto j = json::parse(line);
  EXPECT_EQ(j.at("schema_version"), kRunRecordSchemaVersion);
  for (const char * key : {"config", "metrics", "events", "plan"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("config").at("scene_id"), "urban_crossing");
  const auto & ev = j.at("events").at(0);
  EXPECT_EQ(ev.at("type"), "cue");
  EXPECT_EQ(ev.at("kind"), "Activated");
  EXPECT_EQ(ev.at("tick"), 30);
}

TEST(MetricsCsv, HeaderIsExact)
{
  const std::vector<RunResult> runs{sample_run()};
  const auto csv = metrics_csv(runs);
  const auto header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(
    header,
    "schema_version,scene_id,mode,agent,seed,tick_hz,completed,t_break_s,t_hazard_s,"
    "waypoints_acquired,planned_stops,escalations_medium,escalations_high,gaze_path_length,"
    "planned_length");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(MetricsCsv, AbsentValuesAreEmpty)
{
  RunConfig cfg;
  cfg.agent = GazeAgentConfig::defaults_for(AgentKind::NonCompliant);
  const std::vector<RunResult> runs{
    run_scenario(cfg, load_scene_file(fs::path(TCUE_SCENES_DIR) / "urban_crossing.json"))};
  const auto csv = metrics_csv(runs);
  const auto row = csv.substr(csv.find('\n') + 1);
  EXPECT_NE(row.find("false,,,0,"), std::string::npos) << row;
}

TEST(Export, OneLinePerRunAndStableBytes)
{
  const auto dir = fs::temp_directory_path() / "tcue_export_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<RunResult> runs{sample_run(1), sample_run(2)};
  export_results(runs, dir / "a.jsonl", dir / "a.csv");
  export_results(runs, dir / "b.jsonl", dir / "b.csv");
  const auto rec = slurp(dir / "a.jsonl");
  EXPECT_EQ(std::count(rec.begin(), rec.end(), '\n'), 2);
  EXPECT_EQ(rec, slurp(dir / "b.jsonl"));
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_THROW(export_results(runs, dir / "missing" / "x.jsonl", dir / "x.csv"), IoError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace tcue
