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

#ifndef GAMELAB_GAME_H_
#define GAMELAB_GAME_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gamelab/action_set.h"
#include "gamelab/rng.h"

namespace gamelab {

// One action per player, each in its player's action set.
struct StrategyProfile {
  std::vector<VectorXd> points;

  int num_players() const { return static_cast<int>(points.size()); }
};

// Zero-mean bounded observation noise on bandit cost feedback.
struct NoiseSpec {
  enum class Kind { kNone, kUniform, kGaussianTruncated };

  Kind kind = Kind::kNone;
  double sigma = 0.0;

  static NoiseSpec None() { return {}; }
  static NoiseSpec Uniform(double sigma);
  static NoiseSpec GaussianTruncated(double sigma);

  // One noise draw; |value| <= sigma by construction.
  double Sample(Rng& rng) const;
};

// An n-player continuous game: per-player compact convex action sets, a cost
// oracle, an optional exact gradient oracle, and certified constants. Games
// are immutable after construction; oracles must be pure.
class Game {
 public:
  using CostFn = std::function<double(int, const StrategyProfile&)>;
  using GradFn = std::function<VectorXd(int, const StrategyProfile&)>;

  Game(std::string name, std::vector<ActionSet> sets, CostFn cost,
       GradFn gradient = nullptr);

  const std::string& name() const { return name_; }
  int num_players() const { return static_cast<int>(sets_.size()); }
  const ActionSet& action_set(int i) const { return sets_.at(i); }
  const std::vector<ActionSet>& action_sets() const { return sets_; }
  bool has_gradients() const { return static_cast<bool>(gradient_); }

  // Per-player smoothness l_i of the cost in own action; 0 if unknown.
  double smoothness(int i) const { return smoothness_.empty() ? 0.0 : smoothness_.at(i); }
  void set_smoothness(std::vector<double> l) { smoothness_ = std::move(l); }
  double gradient_bound() const { return gradient_bound_; }
  void set_gradient_bound(double g) { gradient_bound_ = g; }

  // Curvature-interpolation constant for the paired quadratic regularizer:
  // c_i - kappa * (1/2)||x_i||^2 stays convex in own action. 0 when the costs
  // are linear in own action.
  double kappa() const { return kappa_; }
  void set_kappa(double kappa) { kappa_ = kappa; }
  bool linear_costs() const { return linear_costs_; }
  void set_linear_costs(bool v) { linear_costs_ = v; }
  bool labeled_monotone() const { return labeled_monotone_; }
  void set_labeled_monotone(bool v) { labeled_monotone_ = v; }

  // Cost-range record. When the game is a normalization wrapper, cost_span()
  // is the affine scale mapping wrapped costs back to original units.
  bool has_cost_range() const { return cost_range_.has_value(); }
  double cost_lo() const { return cost_range_->first; }
  double cost_hi() const { return cost_range_->second; }
  void set_cost_range(double lo, double hi) { cost_range_ = {lo, hi}; }
  bool normalized() const { return normalized_; }
  double cost_span() const { return normalized_ ? cost_span_ : 1.0; }
  void MarkNormalized(double span) {
    normalized_ = true;
    cost_span_ = span;
  }

  friend double EvaluateCost(const Game&, int, const StrategyProfile&);
  friend VectorXd EvaluateGradient(const Game&, int, const StrategyProfile&);

 private:
  std::string name_;
  std::vector<ActionSet> sets_;
  CostFn cost_;
  GradFn gradient_;
  std::vector<double> smoothness_;
  double gradient_bound_ = 0.0;
  double kappa_ = 0.0;
  bool linear_costs_ = false;
  bool labeled_monotone_ = false;
  std::optional<std::pair<double, double>> cost_range_;
  bool normalized_ = false;
  double cost_span_ = 1.0;
};

// c_i(x). Throws std::domain_error on an infeasible profile and
// std::out_of_range on a bad player index.
double EvaluateCost(const Game& game, int i, const StrategyProfile& x);

// grad_i c_i(x). Throws std::logic_error when no gradient oracle is attached.
VectorXd EvaluateGradient(const Game& game, int i, const StrategyProfile& x);

// c_i(x) + eps with eps drawn per the noise spec.
double ObserveBanditCost(const Game& game, int i, const StrategyProfile& x,
                         const NoiseSpec& noise, Rng& rng);

// Minimum of <F(x)-F(y), x-y> over `samples` random feasible pairs, where
// F stacks the per-player own-gradients. Monotone games return >= -1e-9.
double CheckMonotonicity(const Game& game, int samples, Rng& rng);

// Feasibility check for a full profile.
bool ProfileFeasible(const Game& game, const StrategyProfile& x,
                     double tol = 1e-9);

// Wraps the game so costs map to [0,1] via (c - lo)/(hi - lo) with a single
// global range shared by all players (a common positive scale preserves
// monotonicity). Gradients and kappa are scaled by 1/(hi - lo); the wrapper
// records the span so metrics can report original units. If the game carries
// no cost-range record the range is estimated by sampling.
Game NormalizeCosts(const Game& game, int range_samples = 20000,
                    uint64_t range_seed = 0x5eed);

}  // namespace gamelab

#endif  // GAMELAB_GAME_H_
