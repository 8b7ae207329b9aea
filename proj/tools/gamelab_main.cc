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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gamelab/harness.h"

int main(int argc, char** argv) {
  CLI::App app{"gamelab: bandit learning dynamics in monotone games"};
  app.require_subcommand(1);

  // run
  std::string config_path, out_override, seeds_override;
  int parallelism = 1;
  bool force = false;
  auto* run = app.add_subcommand("run", "run every seed of an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--seeds", seeds_override, "comma-separated seed override");
  run->add_option("--out", out_override, "output directory override");
  run->add_option("--parallelism", parallelism, "worker pool size");
  run->add_flag("--force", force, "rerun even if outputs exist");

  // summarize
  std::string manifest_path;
  auto* summarize = app.add_subcommand("summarize", "aggregate a run manifest");
  summarize->add_option("manifest", manifest_path, "manifest.json path")->required();

  auto* list_games = app.add_subcommand("list-games", "print registered games");
  auto* list_algorithms =
      app.add_subcommand("list-algorithms", "print registered algorithms");

  std::string certify_name;
  auto* certify = app.add_subcommand(
      "certify", "print monotonicity/smoothness/kappa certificates for a game");
  certify->add_option("game", certify_name, "game name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      gamelab::RunConfig config = gamelab::ParseConfig(config_path);
      if (!out_override.empty()) config.out_dir = out_override;
      if (!seeds_override.empty()) {
        config.seeds.clear();
        std::stringstream ss(seeds_override);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          config.seeds.push_back(std::stoull(tok));
        }
        if (config.seeds.empty()) throw std::invalid_argument("--seeds is empty");
      }
      const gamelab::RunManifest manifest =
          gamelab::Execute(config, parallelism, force);
      int cached = 0;
      for (const auto& r : manifest.runs) {
        std::cout << "seed " << r.seed << ": " << r.status << "  ("
                  << r.path << ")\n";
        if (r.status == "cached") ++cached;
      }
      if (cached == static_cast<int>(manifest.runs.size())) {
        std::cout << "cache hit: outputs already current, nothing rewritten\n";
      }
      std::cout << "manifest: " << manifest.path << "\n";
      return manifest.AllOk() ? 0 : 1;
    }
    if (*summarize) {
      const gamelab::RunManifest manifest = gamelab::ReadManifest(manifest_path);
      const gamelab::SummaryReport report = gamelab::Summarize(manifest);
      const std::string csv_path = manifest_path + ".summary.csv";
      std::ofstream(csv_path) << report.ToCsv();
      std::cout << report.ToText();
      std::cout << "summary csv: " << csv_path << "\n";
      return report.complete ? 0 : 1;
    }
    if (*list_games) {
      for (const auto& g : gamelab::ListGames()) std::cout << g << "\n";
      return 0;
    }
    if (*list_algorithms) {
      for (const auto& a : gamelab::ListAlgorithms()) std::cout << a << "\n";
      return 0;
    }
    if (*certify) {
      std::cout << gamelab::CertifyGame(certify_name);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
