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

#ifndef GAMELAB_GAMES_H_
#define GAMELAB_GAMES_H_

#include <functional>
#include <string>
#include <vector>

#include "gamelab/game.h"

namespace gamelab {

// Cournot oligopoly with per-player price intercepts and slopes:
// firm i supplies x_i in [0, C_i], price P_i(x_tot) = a_i - b_i * x_tot,
// cost c_i = d_i x_i - x_i P_i(x_tot).
struct CournotParams {
  VectorXd marginal_cost;  // d_i
  VectorXd intercept;      // a_i
  VectorXd slope;          // b_i, > 0
  VectorXd capacity;       // C_i, > 0

  int num_players() const { return static_cast<int>(marginal_cost.size()); }
  void Validate() const;
};

// The default five-player benchmark: marginal cost 40, intercepts
// [30,50,30,50,30], slopes [50,30,50,30,50], capacities 1. Three players
// are inactive at its equilibrium (0, 1/9, 0, 1/9, 0).
CournotParams DefaultCournotParams();
// A companion preset where every player produces at equilibrium.
CournotParams AllActiveCournotParams();

// Builds the Cournot game over box sets [0, C_i]. Shipped pre-normalized by
// default: raw Cournot costs are signed and unbounded above while the
// one-point estimator assumes |c| <= 1.
Game MakeCournot(const CournotParams& params, bool normalize = true);

// Fixed point of the projected best response
//   x_i <- clamp((a_i - d_i - b_i * sum_{j != i} x_j) / (2 b_i), 0, C_i),
// iterated to inf-norm change <= tol and verified against the KKT
// conditions a posteriori. `start` defaults to the all-zeros profile.
StrategyProfile CournotNash(const CournotParams& params, double tol = 1e-12,
                            const VectorXd* start = nullptr);

// Two-player zero-sum matrix game min_x max_y x'Ay on simplices, optionally
// regularized by (w/2)(||x||^2 + ||y||^2) to make it strictly monotone.
// The orientation flag picks which side of the bilinear form player 0
// minimizes; metrics that take the payoff matrix assume the row player
// minimizes, so flipped games hand them the negated matrix.
struct MatrixGameSpec {
  MatrixXd payoff;
  double quadratic_weight = 0.0;
  double floor_beta = 0.0;      // clipped-simplex floor for both sets
  bool row_minimizes = true;    // orientation of the bilinear term
};

Game MakeMatrixGame(const MatrixGameSpec& spec, bool normalize = false);

// Exact equilibrium of a bilinear zero-sum game by support enumeration
// (small matrices). Returns (x, y) with the min player first.
struct MatrixEquilibrium {
  VectorXd x, y;
  double value = 0.0;
};
MatrixEquilibrium SolveMatrixGame(const MatrixXd& a);

// Time-varying Cournot competition: the intercepts drift.
struct CournotDrift {
  enum class Kind { kDecaying, kSinusoidal };
  Kind kind = Kind::kSinusoidal;
  // decaying: a_i(t) = a_i + k * t^{-(1-alpha)}
  double alpha = 0.25;
  double k = 1.0;
  // sinusoidal: a_i(t) = a_i + amplitude * sin(2 pi t / period)
  double amplitude = 5.0;
  double period = 1e5;
};

class TimeVaryingCournot {
 public:
  TimeVaryingCournot(CournotParams base, CournotDrift drift,
                     bool normalize = true);

  CournotParams ParamsAt(long t) const;
  Game GameAt(long t) const;
  // Nash of the frozen game at step t (warm start from the previous call).
  StrategyProfile NashAt(long t) const;
  // The limit game (decaying drift) or the base game.
  Game LimitGame() const;
  StrategyProfile LimitNash() const;
  // Empirical variation path sum_t ||x*_{t+1} - x*_t|| over 1..T.
  double VariationPath(long horizon) const;
  const CournotParams& base() const { return base_; }
  const CournotDrift& drift() const { return drift_; }
  bool normalized() const { return normalize_; }
  // Cost range shared by every step's game so the per-step normalization is
  // a single fixed affine map.
  std::pair<double, double> cost_range() const { return {lo_, hi_}; }

 private:
  CournotParams base_;
  CournotDrift drift_;
  bool normalize_;
  double lo_ = 0.0, hi_ = 1.0;
};

}  // namespace gamelab

#endif  // GAMELAB_GAMES_H_
