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

#ifndef TCUE__RECORDS_HPP_
#define TCUE__RECORDS_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tcue/harness.hpp"

namespace tcue
{

inline constexpr int kRunRecordSchemaVersion = 1;

// JSON views of engine values. These are the shapes that appear in run
// records and on the session wire.
nlohmann::json to_json(const RunConfig & cfg);
nlohmann::json to_json(const RunMetrics & metrics);
nlohmann::json to_json(const PlannedTrajectory & plan);
nlohmann::json to_json(const CueMarker & marker);
nlohmann::json to_json(const CueEvent & ev, int tick_hz);
nlohmann::json to_json(const AudioEvent & ev, int tick_hz);
nlohmann::json to_json(const TraceEvent & ev, int tick_hz);

/// Applies the keys present in `doc` on top of `defaults`. Unknown keys and
/// bad values throw ValidationError; wrong JSON types throw ParseError.
/// Setting agent.kind resets the other agent fields to that kind's defaults
/// before any explicit agent fields apply.
RunConfig run_config_from_json(const nlohmann::json & doc, RunConfig defaults = {});
RunConfig parse_run_config(std::string_view text, RunConfig defaults = {});
RunConfig load_run_config(const std::filesystem::path & path, RunConfig defaults = {});

/// One compact JSON object, no trailing newline:
/// {"config", "events", "metrics", "plan", "schema_version"}.
std::string run_record_line(const RunResult & run);

const std::vector<std::string> & metrics_csv_columns();
/// Header row plus one row per run; absent values are empty cells.
std::string metrics_csv(std::span<const RunResult> runs);

/// Writes `records` (one run record per line) and `csv`. Throws IoError.
void export_results(
  std::span<const RunResult> runs, const std::filesystem::path & records,
  const std::filesystem::path & csv);

}  // namespace tcue

#endif  // TCUE__RECORDS_HPP_
