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

#include "gamelab/game.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gamelab {

NoiseSpec NoiseSpec::Uniform(double sigma) {
  if (sigma < 0) throw std::invalid_argument("NoiseSpec: sigma must be >= 0");
  return {Kind::kUniform, sigma};
}

NoiseSpec NoiseSpec::GaussianTruncated(double sigma) {
  if (sigma < 0) throw std::invalid_argument("NoiseSpec: sigma must be >= 0");
  return {Kind::kGaussianTruncated, sigma};
}

double NoiseSpec::Sample(Rng& rng) const {
  switch (kind) {
    case Kind::kNone:
      return 0.0;
    case Kind::kUniform:
      return rng.Uniform(-sigma, sigma);
    case Kind::kGaussianTruncated: {
      if (sigma == 0) return 0.0;
      // Rejection from N(0, (sigma/2)^2); zero mean by symmetry.
      for (;;) {
        const double z = 0.5 * sigma * rng.Gaussian();
        if (std::abs(z) <= sigma) return z;
      }
    }
  }
  return 0.0;
}

Game::Game(std::string name, std::vector<ActionSet> sets, CostFn cost,
           GradFn gradient)
    : name_(std::move(name)),
      sets_(std::move(sets)),
      cost_(std::move(cost)),
      gradient_(std::move(gradient)) {
  if (sets_.empty()) throw std::invalid_argument("Game: no players");
  if (!cost_) throw std::invalid_argument("Game: cost oracle required");
}

bool ProfileFeasible(const Game& game, const StrategyProfile& x, double tol) {
  if (x.num_players() != game.num_players()) return false;
  for (int i = 0; i < game.num_players(); ++i) {
    if (!game.action_set(i).Contains(x.points[i], tol)) return false;
  }
  return true;
}

double EvaluateCost(const Game& game, int i, const StrategyProfile& x) {
  if (i < 0 || i >= game.num_players()) {
    throw std::out_of_range("EvaluateCost: player index out of range");
  }
  if (!ProfileFeasible(game, x)) {
    throw std::domain_error("EvaluateCost: infeasible profile");
  }
  return game.cost_(i, x);
}

VectorXd EvaluateGradient(const Game& game, int i, const StrategyProfile& x) {
  if (i < 0 || i >= game.num_players()) {
    throw std::out_of_range("EvaluateGradient: player index out of range");
  }
  if (!game.gradient_) {
    throw std::logic_error("EvaluateGradient: game has no gradient oracle");
  }
  return game.gradient_(i, x);
}

double ObserveBanditCost(const Game& game, int i, const StrategyProfile& x,
                         const NoiseSpec& noise, Rng& rng) {
  const double c = EvaluateCost(game, i, x);
  if (noise.kind == NoiseSpec::Kind::kNone || noise.sigma == 0.0) return c;
  return c + noise.Sample(rng);
}

double CheckMonotonicity(const Game& game, int samples, Rng& rng) {
  if (!game.has_gradients()) {
    throw std::logic_error("CheckMonotonicity: gradient oracle required");
  }
  const int n = game.num_players();
  double min_inner = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    StrategyProfile x, y;
    x.points.reserve(n);
    y.points.reserve(n);
    for (int i = 0; i < n; ++i) {
      x.points.push_back(game.action_set(i).Sample(rng));
      y.points.push_back(game.action_set(i).Sample(rng));
    }
    double inner = 0.0;
    for (int i = 0; i < n; ++i) {
      const VectorXd gx = EvaluateGradient(game, i, x);
      const VectorXd gy = EvaluateGradient(game, i, y);
      inner += (gx - gy).dot(x.points[i] - y.points[i]);
    }
    min_inner = std::min(min_inner, inner);
  }
  return min_inner;
}

Game NormalizeCosts(const Game& game, int range_samples, uint64_t range_seed) {
  double lo, hi;
  if (game.has_cost_range()) {
    lo = game.cost_lo();
    hi = game.cost_hi();
  } else {
    // Estimated range; recorded on the wrapper so the provenance is visible.
    Rng rng(range_seed);
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    const int n = game.num_players();
    for (int s = 0; s < range_samples; ++s) {
      StrategyProfile x;
      for (int i = 0; i < n; ++i) {
        x.points.push_back(game.action_set(i).Sample(rng));
      }
      for (int i = 0; i < n; ++i) {
        const double c = EvaluateCost(game, i, x);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
    }
  }
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw std::runtime_error("NormalizeCosts: non-finite cost range");
  }
  if (hi <= lo) {
    throw std::domain_error("NormalizeCosts: degenerate cost range (hi == lo)");
  }
  const double span = hi - lo;
  if (span == 1.0 && lo == 0.0) {
    // Identity affine map; return an equivalent game with the range recorded.
    Game copy = game;
    copy.set_cost_range(lo, hi);
    return copy;
  }

  // The wrapper captures the inner game by value; oracles stay pure.
  Game inner = game;
  Game wrapped(
      game.name(), game.action_sets(),
      [inner, lo, span](int i, const StrategyProfile& x) {
        return (EvaluateCost(inner, i, x) - lo) / span;
      },
      game.has_gradients()
          ? Game::GradFn([inner, span](int i, const StrategyProfile& x) {
              return VectorXd(EvaluateGradient(inner, i, x) / span);
            })
          : Game::GradFn(nullptr));
  std::vector<double> l;
  for (int i = 0; i < game.num_players(); ++i) {
    l.push_back(game.smoothness(i) / span);
  }
  wrapped.set_smoothness(std::move(l));
  wrapped.set_gradient_bound(game.gradient_bound() / span);
  wrapped.set_kappa(game.kappa() / span);
  wrapped.set_linear_costs(game.linear_costs());
  wrapped.set_labeled_monotone(game.labeled_monotone());
  wrapped.set_cost_range(lo, hi);
  wrapped.MarkNormalized(span);
  return wrapped;
}

}  // namespace gamelab
