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

#include "gamelab/algorithms.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace gamelab {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<int> AmbientDims(const Game& game) {
  std::vector<int> dims;
  for (int i = 0; i < game.num_players(); ++i) {
    dims.push_back(game.action_set(i).dim());
  }
  return dims;
}

}  // namespace

PlayerGeometry PlayerGeometry::ForSet(const ActionSet& set,
                                      RegularizerKind reg) {
  PlayerGeometry g;
  switch (set.kind()) {
    case SetKind::kBox:
      g.geom_dim_ = set.dim();
      g.embedded_ = false;
      g.barrier_ = std::make_shared<BoxLogBarrier>(set.lower(), set.upper());
      break;
    case SetKind::kBall:
      g.geom_dim_ = set.dim();
      g.embedded_ = false;
      g.barrier_ = std::make_shared<BallBarrier>(set.center(), set.radius());
      break;
    case SetKind::kSimplex:
      if (set.dim() < 2) {
        throw std::invalid_argument("PlayerGeometry: 1-point simplex has no interior");
      }
      g.geom_dim_ = set.dim() - 1;
      g.embedded_ = true;
      g.barrier_ = std::make_shared<SimplexBarrier>(set.dim());
      break;
  }
  if (reg == RegularizerKind::kSquaredNorm) {
    g.regularizer_ = std::make_shared<SquaredNormRegularizer>(g.geom_dim_);
  } else {
    g.regularizer_ = std::make_shared<LinearRegularizer>(g.geom_dim_);
  }
  return g;
}

VectorXd PlayerGeometry::Lift(const VectorXd& u) const {
  if (!embedded_) return u;
  VectorXd x(u.size() + 1);
  x.head(u.size()) = u;
  x[u.size()] = 1.0 - u.sum();
  return x;
}

VectorXd PlayerGeometry::Embed(const VectorXd& x) const {
  if (!embedded_) return x;
  return x.head(x.size() - 1);
}

std::vector<PlayerGeometry> DefaultGeometry(const Game& game,
                                            RegularizerKind reg) {
  std::vector<PlayerGeometry> out;
  out.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out.push_back(PlayerGeometry::ForSet(game.action_set(i), reg));
  }
  return out;
}

namespace {

Trajectory RunBanditLoop(const std::function<const Game&(long)>& game_at,
                         const std::vector<PlayerGeometry>& geometry,
                         const Schedule& schedule, long horizon,
                         const NoiseSpec& noise, uint64_t seed,
                         const BanditRunOptions& options) {
  const Stopwatch watch;
  const Game& game0 = game_at(1);
  const int n = game0.num_players();
  if (static_cast<int>(geometry.size()) != n) {
    throw std::invalid_argument("RunBanditLoop: geometry count mismatch");
  }
  if (options.variant == BanditVariant::kMain && schedule.kappa <= 0) {
    throw std::invalid_argument(
        "RunBanditLoop: main variant requires kappa > 0 (linear games use the tau variant)");
  }
  if (options.variant == BanditVariant::kLinearTau) {
    if (schedule.tau <= 0) {
      throw std::invalid_argument("RunBanditLoop: tau variant requires tau > 0");
    }
    for (const auto& g : geometry) {
      if (g.regularizer().Mu() <= 0) {
        throw std::invalid_argument(
            "RunBanditLoop: tau variant requires a strongly convex regularizer");
      }
    }
  }

  Rng rng(seed);
  Trajectory traj;
  traj.seed = seed;
  traj.schedule_fingerprint = Schedule(schedule).Fingerprint();
  traj.profiles = ProfileSeries(AmbientDims(game0));
  traj.played = ProfileSeries(AmbientDims(game0));
  traj.observed_costs.reserve(horizon);

  // x_i^1 = argmin h.
  std::vector<VectorXd> u(n);
  for (int i = 0; i < n; ++i) u[i] = geometry[i].barrier().AnalyticCenter();

  std::vector<Preconditioner> pre(n);
  std::vector<VectorXd> z(n);
  StrategyProfile mean_profile, played_profile;
  mean_profile.points.resize(n);
  played_profile.points.resize(n);

  for (long t = 1; t <= horizon; ++t) {
    const Game& game = game_at(t);
    const double eta = schedule.Eta(t);
    const double delta = schedule.Delta(t);
    // A_i^t weight on Hess p: (t+1) for the main update, tau*(t+1) for the
    // linear variant, none when tracking drops the D_p term.
    double a_scale = 0.0;
    switch (options.variant) {
      case BanditVariant::kMain:
        a_scale = static_cast<double>(t + 1);
        break;
      case BanditVariant::kLinearTau:
        a_scale = schedule.tau * static_cast<double>(t + 1);
        break;
      case BanditVariant::kTracking:
        a_scale = 0.0;
        break;
    }

    for (int i = 0; i < n; ++i) {
      pre[i] = MakePreconditioner(geometry[i].barrier(),
                                  geometry[i].regularizer(), u[i], eta,
                                  a_scale);
      z[i] = SampleUnitSphere(rng, geometry[i].geom_dim());
      const VectorXd u_hat = DikinPoint(u[i], pre[i].a, z[i], delta);
      mean_profile.points[i] = geometry[i].Lift(u[i]);
      played_profile.points[i] = geometry[i].Lift(u_hat);
    }

    const bool check_now =
        options.check_all_iterates || (t % 100 == 1);
    if (check_now) {
      for (int i = 0; i < n; ++i) {
        if (!game.action_set(i).Contains(played_profile.points[i])) {
          throw std::logic_error(
              "RunBanditLoop: Dikin point left the action set");
        }
      }
    }

    std::vector<double> costs(n);
    for (int i = 0; i < n; ++i) {
      costs[i] = ObserveBanditCost(game, i, played_profile, noise, rng);
    }

    for (int i = 0; i < n; ++i) {
      const GradientEstimate est = EllipsoidalEstimateWithInverse(
          costs[i], pre[i].a_inverse, z[i], geometry[i].geom_dim(), delta);
      double coeff = 0.0;
      double prox_scale = 0.0;
      if (options.variant == BanditVariant::kMain) {
        coeff = schedule.kappa;
        prox_scale = static_cast<double>(t + 1);
      } else if (options.variant == BanditVariant::kLinearTau) {
        coeff = schedule.tau;
        prox_scale = static_cast<double>(t + 1);
      }
      const ProxResult prox = BarrierProxStep(
          geometry[i].barrier(), geometry[i].regularizer(), u[i], est.g, eta,
          coeff, prox_scale, options.prox_tol, options.prox_max_iters);
      if (prox.status != ProxStatus::kConverged) {
        throw std::runtime_error("RunBanditLoop: prox failed to converge at t=" +
                                 std::to_string(t));
      }
      u[i] = prox.x_next;
    }

    traj.profiles.Append(mean_profile);
    traj.played.Append(played_profile);
    traj.observed_costs.push_back(std::move(costs));
  }
  traj.wall_clock_seconds = watch.Seconds();
  return traj;
}

}  // namespace

Trajectory RunBanditMirrorDescent(const Game& game,
                                  const std::vector<PlayerGeometry>& geometry,
                                  const Schedule& schedule, long horizon,
                                  const NoiseSpec& noise, uint64_t seed,
                                  const BanditRunOptions& options) {
  return RunBanditLoop([&game](long) -> const Game& { return game; }, geometry,
                       schedule, horizon, noise, seed, options);
}

Trajectory RunBanditMirrorDescentTimeVarying(
    const std::function<const Game&(long)>& game_at,
    const std::vector<PlayerGeometry>& geometry, const Schedule& schedule,
    long horizon, const NoiseSpec& noise, uint64_t seed,
    const BanditRunOptions& options) {
  return RunBanditLoop(game_at, geometry, schedule, horizon, noise, seed,
                       options);
}

EntropyOmdOptions EntropyOmdOptions::Preset(long horizon) {
  EntropyOmdOptions o;
  const double T = static_cast<double>(horizon);
  o.tau = std::pow(T, -1.0 / 6.0);
  o.beta = std::pow(T, -1.0 / 6.0);
  o.eta = std::pow(T, -7.0 / 12.0);
  o.clip_mode = true;
  return o;
}

Trajectory RunEntropyBanditOmd(const MatrixXd& payoff,
                               const EntropyOmdOptions& options, long horizon,
                               uint64_t seed) {
  const Stopwatch watch;
  const int m = static_cast<int>(payoff.rows());
  const int k = static_cast<int>(payoff.cols());
  if (options.eta <= 0) throw std::invalid_argument("RunEntropyBanditOmd: eta must be > 0");
  if (options.eta * options.tau >= 1.0) {
    throw std::invalid_argument("RunEntropyBanditOmd: requires eta*tau < 1");
  }
  if (options.beta * std::max(m, k) > 1.0) {
    throw std::invalid_argument("RunEntropyBanditOmd: beta too large");
  }
  const double clip = options.clip_mode ? options.beta : 0.0;
  const double offset = options.clip_mode ? 0.0 : options.beta;

  Rng rng(seed);
  Trajectory traj;
  traj.seed = seed;
  traj.schedule_fingerprint =
      "entropy_omd;eta=" + std::to_string(options.eta) +
      ";tau=" + std::to_string(options.tau) +
      ";beta=" + std::to_string(options.beta) +
      (options.clip_mode ? ";clip" : ";offset");
  traj.profiles = ProfileSeries({m, k});
  traj.played = ProfileSeries({m, k});

  VectorXd x = VectorXd::Constant(m, 1.0 / m);
  VectorXd y = VectorXd::Constant(k, 1.0 / k);
  if (clip > 0) {
    x = ClipToFloor(x, clip);
    y = ClipToFloor(y, clip);
  }
  std::vector<double> xs(m), ys(k);

  for (long t = 1; t <= horizon; ++t) {
    for (int a = 0; a < m; ++a) xs[a] = x[a];
    for (int b = 0; b < k; ++b) ys[b] = y[b];
    const int a_t = rng.Categorical(xs);
    const int b_t = rng.Categorical(ys);
    const double payoff_ab = payoff(a_t, b_t);

    // Descent form: the x player minimizes x'Ay, the y player descends the
    // negated payoff.
    const GradientEstimate gx =
        SimplexImportanceEstimate(a_t, payoff_ab, x, offset, options.tau, +1);
    const GradientEstimate gy =
        SimplexImportanceEstimate(b_t, -payoff_ab, y, offset, options.tau, +1);

    StrategyProfile mixed;
    mixed.points = {x, y};
    traj.profiles.Append(mixed);
    traj.played.Append(mixed);
    traj.played_arms.push_back(a_t);
    traj.played_arms.push_back(b_t);
    traj.observed_costs.push_back({payoff_ab, -payoff_ab});

    x = KlProxClippedSimplex(x, gx.g, options.eta, clip);
    y = KlProxClippedSimplex(y, gy.g, options.eta, clip);
  }
  traj.wall_clock_seconds = watch.Seconds();
  return traj;
}

OptimisticEwOptions OptimisticEwOptions::Preset(long horizon) {
  OptimisticEwOptions o;
  const double T = static_cast<double>(horizon);
  o.tau = std::pow(T, -1.0 / 6.0);
  o.beta = std::pow(T, -1.0 / 6.0);
  o.eta = std::pow(T, -7.0 / 12.0);
  o.rho = 1.0;
  return o;
}

Trajectory RunOptimisticRegularizedEw(const MatrixXd& payoff,
                                      const OptimisticEwOptions& options,
                                      long horizon, uint64_t seed) {
  const Stopwatch watch;
  const int m = static_cast<int>(payoff.rows());
  const int k = static_cast<int>(payoff.cols());
  if (options.eta <= 0) throw std::invalid_argument("RunOptimisticRegularizedEw: eta must be > 0");
  if (options.eta * options.tau >= 1.0) {
    throw std::invalid_argument("RunOptimisticRegularizedEw: requires eta*tau < 1");
  }
  if (!(options.rho > 0.0 && options.rho <= 1.0)) {
    throw std::invalid_argument("RunOptimisticRegularizedEw: rho must be in (0, 1]");
  }

  Rng rng(seed);
  Trajectory traj;
  traj.seed = seed;
  traj.schedule_fingerprint =
      "optimistic_ew;eta=" + std::to_string(options.eta) +
      ";tau=" + std::to_string(options.tau) +
      ";beta=" + std::to_string(options.beta) +
      ";rho=" + std::to_string(options.rho);
  traj.profiles = ProfileSeries({m, k});
  traj.played = ProfileSeries({m, k});

  VectorXd x = VectorXd::Constant(m, 1.0 / m);
  VectorXd y = VectorXd::Constant(k, 1.0 / k);
  VectorXd gx_smooth = VectorXd::Zero(m);
  VectorXd gy_smooth = VectorXd::Zero(k);
  bool have_momentum = false;
  std::vector<double> xs(m), ys(k);

  auto sample_pair = [&](const VectorXd& px, const VectorXd& py) {
    for (int a = 0; a < m; ++a) xs[a] = px[a];
    for (int b = 0; b < k; ++b) ys[b] = py[b];
    const int a_t = rng.Categorical(xs);
    const int b_t = rng.Categorical(ys);
    return std::make_pair(a_t, b_t);
  };

  for (long t = 1; t <= horizon; ++t) {
    // First play at z_t.
    const auto [a_t, b_t] = sample_pair(x, y);
    const double pay_t = payoff(a_t, b_t);
    VectorXd gx =
        SimplexImportanceEstimate(a_t, pay_t, x, options.beta, 0.0, +1).g;
    VectorXd gy =
        SimplexImportanceEstimate(b_t, -pay_t, y, options.beta, 0.0, +1).g;
    if (options.rho < 1.0) {
      gx = have_momentum ? MomentumUpdate(gx_smooth, gx, options.rho) : gx;
      gy = have_momentum ? MomentumUpdate(gy_smooth, gy, options.rho) : gy;
      gx_smooth = gx;
      gy_smooth = gy;
      have_momentum = true;
    }

    auto [x_half, x_next_unused] =
        OptimisticExponentiatedPair(x, gx, gx, options.eta, options.tau);
    auto [y_half, y_next_unused] =
        OptimisticExponentiatedPair(y, gy, gy, options.eta, options.tau);
    (void)x_next_unused;
    (void)y_next_unused;
    if (options.beta > 0) {
      // Clip after normalization; the floor is capped so a large offset
      // cannot make it infeasible on many-action simplices.
      x_half = ClipToFloor(x_half, std::min(options.beta, 1.0 / (2.0 * m)));
      y_half = ClipToFloor(y_half, std::min(options.beta, 1.0 / (2.0 * k)));
    }

    // Second play at z_{t+1/2}.
    const auto [a_h, b_h] = sample_pair(x_half, y_half);
    const double pay_h = payoff(a_h, b_h);
    VectorXd gx_half =
        SimplexImportanceEstimate(a_h, pay_h, x_half, options.beta, 0.0, +1).g;
    VectorXd gy_half =
        SimplexImportanceEstimate(b_h, -pay_h, y_half, options.beta, 0.0, +1)
            .g;
    if (options.rho < 1.0) {
      gx_half = MomentumUpdate(gx_smooth, gx_half, options.rho);
      gy_half = MomentumUpdate(gy_smooth, gy_half, options.rho);
      gx_smooth = gx_half;
      gy_smooth = gy_half;
    }

    auto [x_half2, x_next] =
        OptimisticExponentiatedPair(x, gx, gx_half, options.eta, options.tau);
    auto [y_half2, y_next] =
        OptimisticExponentiatedPair(y, gy, gy_half, options.eta, options.tau);
    (void)x_half2;
    (void)y_half2;
    if (options.beta > 0) {
      x_next = ClipToFloor(x_next, std::min(options.beta, 1.0 / (2.0 * m)));
      y_next = ClipToFloor(y_next, std::min(options.beta, 1.0 / (2.0 * k)));
    }

    StrategyProfile mixed;
    mixed.points = {x, y};
    traj.profiles.Append(mixed);
    StrategyProfile half;
    half.points = {x_half, y_half};
    traj.played.Append(half);
    traj.played_arms.push_back(a_t);
    traj.played_arms.push_back(b_t);
    traj.played_arms.push_back(a_h);
    traj.played_arms.push_back(b_h);
    traj.observed_costs.push_back({pay_t, -pay_t});
    traj.observed_costs.push_back({pay_h, -pay_h});

    x = x_next;
    y = y_next;
  }
  traj.wall_clock_seconds = watch.Seconds();
  return traj;
}

Trajectory RunExactGradientBaseline(const Game& game, BaselineMethod method,
                                    double eta, long horizon) {
  const Stopwatch watch;
  if (!game.has_gradients()) {
    throw std::logic_error("RunExactGradientBaseline: exact gradients required");
  }
  const int n = game.num_players();
  if (method == BaselineMethod::kOmdEntropy) {
    for (int i = 0; i < n; ++i) {
      if (game.action_set(i).kind() != SetKind::kSimplex) {
        throw std::invalid_argument(
            "RunExactGradientBaseline: omd_entropy requires simplex sets");
      }
    }
  }

  Trajectory traj;
  traj.seed = 0;
  traj.schedule_fingerprint =
      std::string(method == BaselineMethod::kGdProjected ? "gd_projected"
                                                         : "omd_entropy") +
      ";eta=" + std::to_string(eta);
  traj.profiles = ProfileSeries(AmbientDims(game));
  traj.played = ProfileSeries(AmbientDims(game));

  StrategyProfile x;
  for (int i = 0; i < n; ++i) {
    x.points.push_back(game.action_set(i).InteriorPoint());
  }

  std::vector<double> costs(n);
  for (long t = 1; t <= horizon; ++t) {
    traj.profiles.Append(x);
    traj.played.Append(x);
    for (int i = 0; i < n; ++i) costs[i] = EvaluateCost(game, i, x);
    traj.observed_costs.push_back(costs);

    StrategyProfile next = x;
    for (int i = 0; i < n; ++i) {
      const VectorXd g = EvaluateGradient(game, i, x);
      if (method == BaselineMethod::kGdProjected) {
        next.points[i] = game.action_set(i).Project(x.points[i] - eta * g);
      } else {
        next.points[i] = KlProxClippedSimplex(
            x.points[i], g, eta, game.action_set(i).floor_beta());
      }
    }
    x = next;
  }
  traj.wall_clock_seconds = watch.Seconds();
  return traj;
}

}  // namespace gamelab
