// Copyright 2026 The gamelab Authors.
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

#ifndef GAMELAB_HARNESS_H_
#define GAMELAB_HARNESS_H_

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamelab/trajectory.h"

namespace gamelab {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kOutputRootEnvVar = "GAMELAB_OUT";

// A validated experiment description. Unknown keys are rejected with the
// offending key named in the error.
struct RunConfig {
  nlohmann::json raw;  // canonical parsed form
  std::string game_name;
  nlohmann::json game_params;
  std::string algorithm;
  std::string schedule_preset;
  nlohmann::json schedule_overrides;
  long horizon = 0;
  std::vector<uint64_t> seeds;
  double noise_sigma = 0.0;
  std::vector<std::string> metrics;
  std::string out_dir;
  int grid_per_decade = 40;
};

RunConfig ParseConfig(const std::string& path);
RunConfig ParseConfigJson(const nlohmann::json& j);

// FNV-1a over the canonical dump with out_dir/parallelism removed; stable
// under key reordering.
std::string ConfigHash(const nlohmann::json& config);

struct RunManifest {
  std::string config_hash;
  std::string library_version;
  struct Entry {
    uint64_t seed = 0;
    std::string path;
    std::string status;  // "ok" | "cached" | "failed: ..."
    double wall_clock_seconds = 0.0;
  };
  std::vector<Entry> runs;
  std::string path;  // where the manifest was written

  bool AllOk() const;
};

// Runs every seed of the config with a bounded worker pool, one trajectory
// CSV per seed, manifest written last via temp-file rename. A rerun with an
// unchanged config is a no-op unless force is set.
RunManifest Execute(const RunConfig& config, int parallelism = 1,
                    bool force = false);

// Computes the metric series for one seed of a config (the worker body).
std::vector<MetricSample> RunConfigSeed(const RunConfig& config,
                                        uint64_t seed);

// Trajectory CSV: comment header with config hash and seed, then t,metric,value.
// Extra comment lines (already '#'-prefixed) are written after the header.
void WriteTrajectoryCsv(const std::string& path,
                        const std::vector<MetricSample>& samples,
                        const std::string& config_hash, uint64_t seed,
                        const std::vector<std::string>& extra_comments = {});
std::vector<MetricSample> ReadTrajectoryCsv(const std::string& path);

// Grid density of the hindsight-comparator search used for regret metrics;
// recorded in every trajectory CSV that carries regret columns.
inline constexpr int kRegretComparatorResolution = 64;

struct SummaryRow {
  std::string metric;
  long t = 0;
  double mean = 0.0, median = 0.0, stddev = 0.0;
  int count = 0;
};
struct SummaryReport {
  std::string config_hash;
  std::vector<SummaryRow> rows;
  // Fitted Theil-Sen slope per metric over the final decade.
  std::map<std::string, double> slopes;
  bool complete = true;
  std::string ToText() const;
  std::string ToCsv() const;
};

SummaryReport Summarize(const RunManifest& manifest);
RunManifest ReadManifest(const std::string& path);

// Registries for the CLI.
std::vector<std::string> ListGames();
std::vector<std::string> ListAlgorithms();
// Monotonicity / smoothness / kappa certificate text for a library game.
std::string CertifyGame(const std::string& name);

}  // namespace gamelab

#endif  // GAMELAB_HARNESS_H_
