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

#include "gamelab/trajectory.h"

#include <cmath>
#include <stdexcept>

namespace gamelab {

ProfileSeries::ProfileSeries(std::vector<int> dims) : dims_(std::move(dims)) {
  offsets_.reserve(dims_.size());
  for (int d : dims_) {
    offsets_.push_back(total_dim_);
    total_dim_ += d;
  }
}

void ProfileSeries::Append(const StrategyProfile& profile) {
  if (profile.num_players() != num_players()) {
    throw std::invalid_argument("ProfileSeries: player count mismatch");
  }
  for (int i = 0; i < num_players(); ++i) {
    const VectorXd& v = profile.points[i];
    if (v.size() != dims_[i]) {
      throw std::invalid_argument("ProfileSeries: dimension mismatch");
    }
    data_.insert(data_.end(), v.data(), v.data() + v.size());
  }
}

StrategyProfile ProfileSeries::At(long t) const {
  StrategyProfile p;
  p.points.reserve(num_players());
  for (int i = 0; i < num_players(); ++i) {
    p.points.emplace_back(PlayerAt(t, i));
  }
  return p;
}

Eigen::Map<const VectorXd> ProfileSeries::PlayerAt(long t, int i) const {
  if (t < 0 || t >= size()) throw std::out_of_range("ProfileSeries: bad t");
  return Eigen::Map<const VectorXd>(
      data_.data() + t * total_dim_ + offsets_.at(i), dims_.at(i));
}

std::vector<long> MetricGrid(long horizon, int per_decade) {
  if (horizon < 1) throw std::invalid_argument("MetricGrid: horizon must be >= 1");
  if (per_decade < 1) throw std::invalid_argument("MetricGrid: per_decade must be >= 1");
  std::vector<long> grid;
  grid.push_back(1);
  const double step = 1.0 / per_decade;
  for (double e = step;; e += step) {
    const long t = static_cast<long>(std::llround(std::pow(10.0, e)));
    if (t >= horizon) break;
    if (t > grid.back()) grid.push_back(t);
  }
  if (horizon > grid.back()) grid.push_back(horizon);
  return grid;
}

}  // namespace gamelab
