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

#ifndef GAMELAB_TRAJECTORY_H_
#define GAMELAB_TRAJECTORY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gamelab/game.h"

namespace gamelab {

struct MetricSample {
  long t = 0;
  std::string name;
  double value = 0.0;
  uint64_t seed = 0;
};

// Time-major flattened storage for per-player vector series.
class ProfileSeries {
 public:
  ProfileSeries() = default;
  explicit ProfileSeries(std::vector<int> dims);

  int num_players() const { return static_cast<int>(dims_.size()); }
  long size() const {
    return total_dim_ == 0 ? 0 : static_cast<long>(data_.size()) / total_dim_;
  }
  void Append(const StrategyProfile& profile);
  StrategyProfile At(long t) const;
  Eigen::Map<const VectorXd> PlayerAt(long t, int i) const;
  const std::vector<double>& raw() const { return data_; }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
  std::vector<double> data_;
};

// One run of one algorithm: mean iterates, played (perturbed) actions,
// observed costs, and metric samples on a logarithmic time grid. Replaying
// with the same seed reproduces the series bit-identically.
struct Trajectory {
  uint64_t seed = 0;
  std::string schedule_fingerprint;
  ProfileSeries profiles;        // x^t, ambient coordinates
  ProfileSeries played;          // x-hat^t (for simplex dynamics: mixed x_t)
  std::vector<int> played_arms;  // sampled pure actions, simplex dynamics only
  std::vector<std::vector<double>> observed_costs;  // [t][player]
  std::vector<MetricSample> metrics;
  double wall_clock_seconds = 0.0;  // not serialized; reruns must match bytes
};

// Logarithmic sample grid: `per_decade` points per decade, always including
// t = 1 and t = T, strictly increasing.
std::vector<long> MetricGrid(long horizon, int per_decade = 40);

}  // namespace gamelab

#endif  // GAMELAB_TRAJECTORY_H_
