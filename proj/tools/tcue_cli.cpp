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

// tcue: headless runs, sweeps, baseline comparison, saliency dumps and the
// live session server.
//
// Exit codes: 0 success, 2 bad input (parse/validation/unknown scene),
// 1 anything else.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcue/errors.hpp"
#include "tcue/harness.hpp"
#include "tcue/records.hpp"
#include "tcue/saliency.hpp"
#include "tcue/scene.hpp"
#include "tcue/server.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct Seeds
{
  std::uint64_t first{1};
  std::uint64_t last{1};
};

std::uint64_t parse_u64(std::string_view text)
{
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw tcue::ValidationError("bad seed '" + std::string(text) + "'");
  }
  return v;
}

// "7" or "1..100", inclusive.
Seeds parse_seeds(const std::string & text)
{
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_u64(text);
    return {v, v};
  }
  Seeds s{parse_u64(text.substr(0, dots)), parse_u64(text.substr(dots + 2))};
  if (s.last < s.first) {
    throw tcue::ValidationError("seed range '" + text + "' is empty");
  }
  return s;
}

void write_file(const fs::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw tcue::IoError("cannot write " + path.string());
  }
}

json waypoints_json(const std::vector<tcue::Waypoint> & wps)
{
  json out = json::array();
  for (const auto & w : wps) {
    json j = {{"x", w.position.x}, {"y", w.position.y}, {"score", w.score},
      {"cell", {w.source_col, w.source_row}}};
    j["object_id"] = w.snapped_object_id ? json(*w.snapped_object_id) : json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

struct Common
{
  std::string config_path;
  std::string agent;
  std::string mode;
  std::optional<int> tick_hz;

  tcue::RunConfig build() const
  {
    tcue::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = tcue::load_run_config(config_path);
    }
    if (!agent.empty()) {
      const auto seed = cfg.agent.seed;
      cfg.agent = tcue::GazeAgentConfig::defaults_for(tcue::agent_kind_from_string(agent));
      cfg.agent.seed = seed;
    }
    if (!mode.empty()) {
      cfg.mode = tcue::run_mode_from_string(mode);
    }
    if (tick_hz) {
      cfg.tick_hz = *tick_hz;
    }
    return cfg;
  }

  void add_to(CLI::App * cmd)
  {
    cmd->add_option("--config", config_path, "Run config JSON (partial; defaults fill the rest)");
    cmd->add_option("--agent", agent, "Compliant | Distracted | NonCompliant | RandomScan");
    cmd->add_option("--mode", mode, "Guided | Unguided");
    cmd->add_option("--tick-hz", tick_hz, "Engine tick rate");
  }
};

void export_if_asked(
  const std::vector<tcue::RunResult> & runs, const std::string & records, const std::string & csv)
{
  if (records.empty() && csv.empty()) {
    return;
  }
  const fs::path rec = records.empty() ? fs::path("/dev/null") : fs::path(records);
  const fs::path tab = csv.empty() ? fs::path("/dev/null") : fs::path(csv);
  tcue::export_results(runs, rec, tab);
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Takeover cueing simulator"};
  app.require_subcommand(1);

  // run
  auto * run = app.add_subcommand("run", "Run one headless scenario");
  std::string run_scene;
  std::uint64_t run_seed = 1;
  std::string run_records;
  std::string run_csv;
  std::string run_trace;
  std::string run_replay;
  Common run_common;
  run->add_option("--scene", run_scene, "Scene JSON file")->required();
  run->add_option("--seed", run_seed, "Master seed");
  run->add_option("--records", run_records, "Run record output (JSON lines)");
  run->add_option("--csv", run_csv, "Metrics CSV output");
  run->add_option("--trace-out", run_trace, "Write the per-tick gaze trace as CSV");
  run->add_option("--replay", run_replay, "Drive the run from a recorded gaze trace");
  run_common.add_to(run);

  // sweep
  auto * sweep = app.add_subcommand("sweep", "Run every scene in a directory over a seed range");
  std::string sweep_dir;
  std::string sweep_seeds = "1..10";
  std::string sweep_records;
  std::string sweep_csv;
  Common sweep_common;
  sweep->add_option("--scenes", sweep_dir, "Directory of scene JSON files")->required();
  sweep->add_option("--seeds", sweep_seeds, "Seed or inclusive range A..B");
  sweep->add_option("--records", sweep_records, "Run records output (JSON lines)");
  sweep->add_option("--csv", sweep_csv, "Metrics CSV output");
  sweep_common.add_to(sweep);

  // compare
  auto * compare = app.add_subcommand("compare", "Guided vs unguided baseline over seeds 1..n");
  std::string cmp_scene;
  int cmp_n = 100;
  Common cmp_common;
  compare->add_option("--scene", cmp_scene, "Scene JSON file")->required();
  compare->add_option("--n", cmp_n, "Number of seeds")->check(CLI::PositiveNumber);
  cmp_common.add_to(compare);

  // saliency
  auto * sal_group = app.add_subcommand("saliency", "Saliency grid tools");
  sal_group->require_subcommand(1);
  auto * sal = sal_group->add_subcommand("dump", "Write base and fused grids as PGM");
  std::string sal_scene;
  std::string sal_out = ".";
  sal->add_option("--scene", sal_scene, "Scene JSON file")->required();
  sal->add_option("--out-dir", sal_out, "Directory for base.pgm and fused.pgm");

  // serve
  auto * serve = app.add_subcommand("serve", "Serve live sessions over WebSocket");
  std::string srv_dir;
  std::string srv_address;
  int srv_port = 8080;
  std::size_t srv_max = 16;
  std::string srv_out;
  std::string srv_config;
  serve->add_option("--scenes", srv_dir, "Directory of scene JSON files")->required();
  serve->add_option("--address", srv_address, "Bind address (default $TCUE_BIND_ADDRESS or 127.0.0.1)");
  serve->add_option("--port", srv_port, "TCP port, 0 for ephemeral")->check(CLI::Range(0, 65535));
  serve->add_option("--max-sessions", srv_max, "Concurrent session limit");
  serve->add_option("--output-dir", srv_out, "Persist traces and run records here");
  serve->add_option("--config", srv_config, "Default run config JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const auto scene = tcue::load_scene_file(run_scene);
      auto cfg = run_common.build();
      cfg.seed = run_seed;
      std::optional<tcue::GazeTrace> replay;
      if (!run_replay.empty()) {
        replay = tcue::load_gaze_trace(run_replay);
      }
      const auto result = tcue::run_scenario(cfg, scene, replay ? &*replay : nullptr);
      std::cout << tcue::run_record_line(result) << '\n';
      if (!run_trace.empty()) {
        tcue::save_gaze_trace(result.gaze, run_trace);
      }
      export_if_asked({result}, run_records, run_csv);
      return 0;
    }

    if (*sweep) {
      const auto library = tcue::SceneLibrary::from_directory(sweep_dir);
      const auto seeds = parse_seeds(sweep_seeds);
      const auto base = sweep_common.build();
      std::vector<tcue::RunResult> runs;
      for (const auto & id : library.ids()) {
        for (auto s = seeds.first; s <= seeds.last; ++s) {
          auto cfg = base;
          cfg.scene_id = id;
          cfg.seed = s;
          runs.push_back(tcue::run_scenario(cfg, library));
          if (s == seeds.last) {
            break;
          }
        }
      }
      export_if_asked(runs, sweep_records, sweep_csv);
      if (sweep_csv.empty()) {
        std::cout << tcue::metrics_csv(runs);
      }
      return 0;
    }

    if (*compare) {
      const auto scene = tcue::load_scene_file(cmp_scene);
      const auto summary = tcue::run_baseline_comparison(scene, cmp_n, cmp_common.build());
      const auto opt = [](const std::optional<double> & v) {return v ? json(*v) : json(nullptr);};
      json rows = json::array();
      for (const auto & r : summary.rows) {
        rows.push_back(
          {{"seed", r.seed}, {"guided_t_hazard_s", opt(r.guided_t_hazard_s)},
            {"unguided_t_hazard_s", opt(r.unguided_t_hazard_s)}, {"guided_wins", r.guided_wins}});
      }
      const json out = {{"scene_id", summary.scene_id},
        {"guided_median_s", opt(summary.guided_median_s)},
        {"unguided_median_s", opt(summary.unguided_median_s)},
        {"guided_wins", summary.guided_wins}, {"win_rate", summary.win_rate}, {"rows", rows}};
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (*sal) {
      const auto scene = tcue::load_scene_file(sal_scene);
      const tcue::SaliencyConfig cfg;
      const auto base = tcue::base_saliency(scene, cfg.grid);
      const auto fused = tcue::fuse_hazard_prior(base, scene.hazard.position, cfg.sigma_h);
      const auto wps = tcue::extract_waypoints(fused, scene, cfg.waypoints);
      fs::create_directories(sal_out);
      write_file(fs::path(sal_out) / "base.pgm", tcue::to_pgm(base));
      write_file(fs::path(sal_out) / "fused.pgm", tcue::to_pgm(fused));
      std::cout << json{{"scene_id", scene.id}, {"waypoints", waypoints_json(wps)}}.dump(2)
                << '\n';
      return 0;
    }

    if (*serve) {
      tcue::ServerConfig cfg;
      if (!srv_address.empty()) {
        cfg.address = srv_address;
      } else if (const char * env = std::getenv(tcue::kBindAddressEnv); env && *env) {
        cfg.address = env;
      }
      cfg.port = static_cast<std::uint16_t>(srv_port);
      cfg.max_sessions = srv_max;
      if (!srv_out.empty()) {
        cfg.output_dir = srv_out;
      }
      if (!srv_config.empty()) {
        cfg.run_defaults = tcue::load_run_config(srv_config);
      }
      tcue::SessionServer server(tcue::SceneLibrary::from_directory(srv_dir), cfg);
      server.start();
      std::cout << "listening on " << cfg.address << ':' << server.port() << std::endl;
      server.wait();
      return 0;
    }
  } catch (const tcue::InputError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
