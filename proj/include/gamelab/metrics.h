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

#ifndef GAMELAB_METRICS_H_
#define GAMELAB_METRICS_H_

#include <string>
#include <vector>

#include "gamelab/game.h"
#include "gamelab/geometry.h"
#include "gamelab/trajectory.h"

namespace gamelab {

// max_b [x'A]_b - min_a [Ay]_a for the bilinear game min_x max_y x'Ay;
// zero exactly at equilibrium. Linear objectives attain extremes at vertices.
double DualityGap(const MatrixXd& a, const VectorXd& x, const VectorXd& y);

// sum_i <grad_i c_i(x), x_i - ref_i>, reported in original cost units when
// the game is a normalization wrapper.
double GapFunction(const Game& game, const StrategyProfile& x,
                   const StrategyProfile& ref);

enum class DivergenceKind { kSquaredEuclidean, kBregmanP, kKl };

// Sum over players of the divergence from `reference` to `profile`
// (reference first, matching D(x*, x^t)). kBregmanP uses the supplied
// regularizer; kKl requires simplices with positive entries.
double DivergenceTo(const std::vector<VectorXd>& reference,
                    const StrategyProfile& profile, DivergenceKind kind,
                    const Regularizer* p = nullptr);

// Cumulative individual regret of `player` along the trajectory: received
// costs c_i(xhat_i^t, x_{-i}^t) minus the best fixed action in hindsight.
// The comparator is found by golden-section search for 1-d box sets and by
// vertices plus an interior grid at `comparator_resolution` otherwise.
// Returns the running cumulative series sampled on the metric grid.
std::vector<MetricSample> IndividualRegret(const Trajectory& trajectory,
                                           const Game& game, int player,
                                           int comparator_resolution = 64,
                                           int grid_per_decade = 40);

// Theil-Sen slope of log(value) vs log(t) over samples with t in
// [t_lo, t_hi]. Requires >= 10 samples, all values positive.
double FitRate(const std::vector<MetricSample>& series, double t_lo,
               double t_hi);
double FitRate(const std::vector<std::pair<double, double>>& points);

}  // namespace gamelab

#endif  // GAMELAB_METRICS_H_
