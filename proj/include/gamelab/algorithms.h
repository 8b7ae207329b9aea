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

#ifndef GAMELAB_ALGORITHMS_H_
#define GAMELAB_ALGORITHMS_H_

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "gamelab/estimators.h"
#include "gamelab/game.h"
#include "gamelab/games.h"
#include "gamelab/geometry.h"
#include "gamelab/prox.h"
#include "gamelab/schedule.h"
#include "gamelab/trajectory.h"

namespace gamelab {

enum class RegularizerKind { kSquaredNorm, kLinear };

// Per-player geometry: the barrier/regularizer pair and the coordinates the
// updates run in. Box and ball sets use ambient coordinates; simplex sets use
// the drop-last-coordinate embedding so the barrier Hessian is nonsingular.
class PlayerGeometry {
 public:
  static PlayerGeometry ForSet(const ActionSet& set,
                               RegularizerKind reg = RegularizerKind::kSquaredNorm);

  int geom_dim() const { return geom_dim_; }
  bool embedded() const { return embedded_; }
  const Barrier& barrier() const { return *barrier_; }
  const Regularizer& regularizer() const { return *regularizer_; }
  // geometry coordinates -> ambient action
  VectorXd Lift(const VectorXd& u) const;
  // ambient action -> geometry coordinates
  VectorXd Embed(const VectorXd& x) const;

 private:
  int geom_dim_ = 0;
  bool embedded_ = false;
  std::shared_ptr<const Barrier> barrier_;
  std::shared_ptr<const Regularizer> regularizer_;
};

std::vector<PlayerGeometry> DefaultGeometry(
    const Game& game, RegularizerKind reg = RegularizerKind::kSquaredNorm);

enum class BanditVariant {
  kMain,      // Eq-(1) update: eta*kappa*(t+1) D_p + D_h; A-scale (t+1)
  kLinearTau, // linear games: eta*tau*(t+1) D_p + D_h; A-scale tau*(t+1)
  kTracking,  // D_h only; A from the bare barrier Hessian
};

struct BanditRunOptions {
  BanditVariant variant = BanditVariant::kMain;
  double prox_tol = 1e-10;
  int prox_max_iters = 100;
  // Check feasibility of every iterate (test mode) or a 1% sample.
  bool check_all_iterates = false;
};

// The self-concordant-barrier bandit mirror-descent loop. Per step: build
// A_i^t, play the Dikin-perturbed point, observe the bandit cost, form the
// ellipsoidal estimate, and take the barrier prox step. One generator drives
// the whole run, so (inputs, seed) determine the trajectory bytes.
Trajectory RunBanditMirrorDescent(const Game& game,
                                  const std::vector<PlayerGeometry>& geometry,
                                  const Schedule& schedule, long horizon,
                                  const NoiseSpec& noise, uint64_t seed,
                                  const BanditRunOptions& options = {});

// Same loop over a per-step game sequence (time-varying play). In converging
// mode pass variant kMain; for equilibrium tracking pass kTracking.
Trajectory RunBanditMirrorDescentTimeVarying(
    const std::function<const Game&(long)>& game_at,
    const std::vector<PlayerGeometry>& geometry, const Schedule& schedule,
    long horizon, const NoiseSpec& noise, uint64_t seed,
    const BanditRunOptions& options = {});

// Entropy-regularized bandit mirror descent on the clipped simplex for a
// two-player zero-sum matrix game (x minimizes x'Ay). Per step both players
// sample an action, importance-weight the observed payoff, and take a
// KL prox step on {x : x_a >= beta}.
struct EntropyOmdOptions {
  double eta = 0.0;
  double tau = 0.0;
  double beta = 0.0;
  // true: divide by x[a] and clip the domain to {x : x_a >= beta};
  // false: divide by x[a] + beta (offset variant) with no domain clip.
  bool clip_mode = true;
  // Presets tau = beta = T^{-1/6}, eta = T^{-7/12}.
  static EntropyOmdOptions Preset(long horizon);
};
Trajectory RunEntropyBanditOmd(const MatrixXd& payoff,
                               const EntropyOmdOptions& options, long horizon,
                               uint64_t seed);

// The optimistic two-step exponentiated dynamics with two bandit plays per
// round and optional gradient momentum (rho = 1 disables it).
struct OptimisticEwOptions {
  double eta = 0.0;
  double tau = 0.0;
  double beta = 0.0;  // estimator denominator offset; also floor clip if > 0
  double rho = 1.0;
  static OptimisticEwOptions Preset(long horizon);
};
Trajectory RunOptimisticRegularizedEw(const MatrixXd& payoff,
                                      const OptimisticEwOptions& options,
                                      long horizon, uint64_t seed);

// Exact-gradient baselines: projected gradient descent on any set, or the
// multiplicative-weights simplex update (simplex games only).
enum class BaselineMethod { kGdProjected, kOmdEntropy };
Trajectory RunExactGradientBaseline(const Game& game, BaselineMethod method,
                                    double eta, long horizon);

}  // namespace gamelab

#endif  // GAMELAB_ALGORITHMS_H_
