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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gamelab/algorithms.h"
#include "gamelab/metrics.h"

using namespace gamelab;

namespace {

Game ZeroCostBallGame() {
  std::vector<ActionSet> sets{ActionSet::Ball(VectorXd::Zero(2), 1.0)};
  Game game("zero", std::move(sets),
            [](int, const StrategyProfile&) { return 0.0; },
            [](int, const StrategyProfile&) { return VectorXd::Zero(2); });
  game.set_kappa(1.0);
  return game;
}

bool SameBytes(const Trajectory& a, const Trajectory& b) {
  return a.profiles.raw() == b.profiles.raw() &&
         a.played.raw() == b.played.raw() &&
         a.observed_costs == b.observed_costs &&
         a.played_arms == b.played_arms;
}

}  // namespace

TEST_CASE("zero-cost game is a fixed point of the bandit loop") {
  const Game game = ZeroCostBallGame();
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::StronglyMonotoneMain(2, 1.0);
  const Trajectory traj = RunBanditMirrorDescent(game, geometry, schedule, 5,
                                                 NoiseSpec::None(), 3);
  const VectorXd center = geometry[0].barrier().AnalyticCenter();
  for (long t = 0; t < 5; ++t) {
    CHECK((traj.profiles.PlayerAt(t, 0) - center).norm() <= 1e-12);
  }
}

TEST_CASE("identical (config, seed) reproduces identical trajectories") {
  const Game game = MakeCournot(DefaultCournotParams(), true);
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::StronglyMonotoneMain(1, game.kappa());
  const Trajectory a = RunBanditMirrorDescent(game, geometry, schedule, 500,
                                              NoiseSpec::None(), 11);
  const Trajectory b = RunBanditMirrorDescent(game, geometry, schedule, 500,
                                              NoiseSpec::None(), 11);
  const Trajectory c = RunBanditMirrorDescent(game, geometry, schedule, 500,
                                              NoiseSpec::None(), 12);
  CHECK(SameBytes(a, b));
  CHECK(!SameBytes(a, c));
}

TEST_CASE("every iterate and play is feasible") {
  const Game game = MakeCournot(DefaultCournotParams(), true);
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::StronglyMonotoneMain(1, game.kappa());
  BanditRunOptions options;
  options.check_all_iterates = true;  // the loop itself asserts containment
  const Trajectory traj = RunBanditMirrorDescent(
      game, geometry, schedule, 2000, NoiseSpec::Uniform(0.05), 13, options);
  for (long t = 0; t < traj.profiles.size(); ++t) {
    const StrategyProfile x = traj.profiles.At(t);
    const StrategyProfile played = traj.played.At(t);
    for (int i = 0; i < game.num_players(); ++i) {
      REQUIRE(game.action_set(i).Contains(x.points[i]));
      REQUIRE(game.action_set(i).Contains(played.points[i]));
    }
  }
}

TEST_CASE("theorem presets respect the eta*d <= 1/2 safety bound") {
  for (int d : {1, 2, 5, 20}) {
    std::vector<Schedule> presets = {
        Schedule::MonotoneMain(d, 1.0), Schedule::StronglyMonotoneMain(d, 1.0),
        Schedule::LinearTau(d, 100000), Schedule::Noisy(d, 0.1, 1.0),
        Schedule::Tracking(d, 0.3)};
    for (const Schedule& s : presets) {
      for (long t : {1L, 2L, 10L, 1000L, 100000L}) {
        CHECK(s.Eta(t) * d <= 0.5 + 1e-12);
        CHECK(s.Delta(t) > 0.0);
        CHECK(s.Delta(t) <= 1.0);
      }
    }
  }
}

TEST_CASE("experiment preset pins the stated formulas") {
  const Schedule s = Schedule::ExperimentPaper(1.0);
  CHECK(s.Eta(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s.Eta(99) == doctest::Approx(0.1));
  CHECK(s.Delta(1) == doctest::Approx(0.001));
  CHECK(s.Delta(100000) == doctest::Approx(0.001));
}

TEST_CASE("entropy omd offset mode runs without a domain clip") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  EntropyOmdOptions options;
  options.eta = 0.005;
  options.tau = 0.1;
  options.beta = 0.1;
  options.clip_mode = false;  // divide by x + beta, no floor
  const Trajectory traj = RunEntropyBanditOmd(a, options, 3000, 14);
  double min_coord = 1.0;
  for (long t = 0; t < 3000; t += 10) {
    const StrategyProfile p = traj.profiles.At(t);
    CHECK(std::abs(p.points[0].sum() - 1.0) <= 1e-9);
    min_coord = std::min(min_coord, p.points[0].minCoeff());
  }
  CHECK(min_coord > 0.0);  // positivity without any pinned floor
}

TEST_CASE("main variant refuses linear games and zero kappa") {
  MatrixGameSpec spec;
  spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Game game = MakeMatrixGame(spec, true);
  const auto geometry = DefaultGeometry(game);
  Schedule schedule = Schedule::StronglyMonotoneMain(1, 0.0);
  CHECK_THROWS_AS(RunBanditMirrorDescent(game, geometry, schedule, 10,
                                         NoiseSpec::None(), 1),
                  std::invalid_argument);
}

TEST_CASE("tau variant requires a strongly convex regularizer") {
  MatrixGameSpec spec;
  spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Game game = MakeMatrixGame(spec, true);
  const auto geometry = DefaultGeometry(game, RegularizerKind::kLinear);
  Schedule schedule = Schedule::LinearTau(1, 1000);
  BanditRunOptions options;
  options.variant = BanditVariant::kLinearTau;
  CHECK_THROWS_AS(RunBanditMirrorDescent(game, geometry, schedule, 10,
                                         NoiseSpec::None(), 1, options),
                  std::invalid_argument);
}

TEST_CASE("bandit cournot moves toward the equilibrium") {
  const CournotParams params = DefaultCournotParams();
  const Game game = MakeCournot(params, true);
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::StronglyMonotoneMain(1, game.kappa());
  const StrategyProfile nash = CournotNash(params);
  const long horizon = 20000;
  const Trajectory traj = RunBanditMirrorDescent(game, geometry, schedule,
                                                 horizon, NoiseSpec::None(), 1);
  const double early =
      DivergenceTo(nash.points, traj.profiles.At(99),
                   DivergenceKind::kSquaredEuclidean);
  const double late =
      DivergenceTo(nash.points, traj.profiles.At(horizon - 1),
                   DivergenceKind::kSquaredEuclidean);
  CHECK(late < early);
}

TEST_CASE("noisy variant keeps the downward distance trend") {
  const CournotParams params = DefaultCournotParams();
  const Game game = MakeCournot(params, true);
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::Noisy(1, 0.1, game.kappa());
  const StrategyProfile nash = CournotNash(params);
  const long horizon = 30000;
  const Trajectory traj = RunBanditMirrorDescent(
      game, geometry, schedule, horizon, NoiseSpec::Uniform(0.1), 17);
  std::vector<MetricSample> series;
  for (long t : MetricGrid(horizon)) {
    if (t >= 100) {
      series.push_back({t, "dist2",
                        DivergenceTo(nash.points, traj.profiles.At(t - 1),
                                     DivergenceKind::kSquaredEuclidean),
                        17});
    }
  }
  CHECK(FitRate(series, 100, horizon) < 0.0);
}

TEST_CASE("linear variant smoke at horizon one") {
  MatrixGameSpec spec;
  spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Game game = MakeMatrixGame(spec, true);
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::LinearTau(1, 1);
  CHECK(schedule.tau == doctest::Approx(1.0));
  BanditRunOptions options;
  options.variant = BanditVariant::kLinearTau;
  const Trajectory traj = RunBanditMirrorDescent(game, geometry, schedule, 1,
                                                 NoiseSpec::None(), 23, options);
  CHECK(traj.profiles.size() == 1);
  const StrategyProfile p = traj.profiles.At(0);
  for (int i = 0; i < 2; ++i) {
    CHECK(game.action_set(i).Contains(p.points[i]));
  }
}

TEST_CASE("optimistic ew averaged iterates beat the uniform duality gap") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const long horizon = 10000;
  const OptimisticEwOptions options = OptimisticEwOptions::Preset(horizon);
  const Trajectory traj = RunOptimisticRegularizedEw(a, options, horizon, 31);
  VectorXd x_avg = VectorXd::Zero(2), y_avg = VectorXd::Zero(2);
  for (long t = 0; t < horizon; ++t) {
    x_avg += traj.profiles.PlayerAt(t, 0);
    y_avg += traj.profiles.PlayerAt(t, 1);
  }
  x_avg /= horizon;
  y_avg /= horizon;
  const double uniform_gap =
      DualityGap(a, VectorXd::Constant(2, 0.5), VectorXd::Constant(2, 0.5));
  CHECK(DualityGap(a, x_avg, y_avg) <= uniform_gap);
}

TEST_CASE("linear tau variant closes the duality gap on the default matrix") {
  MatrixGameSpec spec;
  spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Game game = MakeMatrixGame(spec, true);
  const auto geometry = DefaultGeometry(game);
  const long horizon = 20000;
  const Schedule schedule = Schedule::LinearTau(1, horizon);
  BanditRunOptions options;
  options.variant = BanditVariant::kLinearTau;
  const Trajectory traj = RunBanditMirrorDescent(
      game, geometry, schedule, horizon, NoiseSpec::None(), 2, options);
  const StrategyProfile early = traj.profiles.At(99);
  const StrategyProfile last = traj.profiles.At(horizon - 1);
  const double gap_early = DualityGap(spec.payoff, early.points[0], early.points[1]);
  const double gap_last = DualityGap(spec.payoff, last.points[0], last.points[1]);
  CHECK(gap_last < gap_early);
}

TEST_CASE("entropy omd: zero payoffs keep the uniform point stationary") {
  const MatrixXd a = MatrixXd::Zero(2, 2);
  EntropyOmdOptions options;
  options.eta = 0.01;
  options.tau = 0.2;
  options.beta = 0.1;
  const Trajectory traj = RunEntropyBanditOmd(a, options, 200, 5);
  for (long t = 0; t < 200; ++t) {
    CHECK((traj.profiles.PlayerAt(t, 0) - VectorXd::Constant(2, 0.5)).norm() <=
          1e-12);
    CHECK((traj.profiles.PlayerAt(t, 1) - VectorXd::Constant(2, 0.5)).norm() <=
          1e-12);
  }
}

TEST_CASE("entropy omd: singleton clipped domain freezes the iterates") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  EntropyOmdOptions options;
  options.eta = 0.05;
  options.tau = 0.0;
  options.beta = 0.5;  // beta * d = 1
  const Trajectory traj = RunEntropyBanditOmd(a, options, 100, 6);
  for (long t = 0; t < 100; ++t) {
    CHECK((traj.profiles.PlayerAt(t, 0) - VectorXd::Constant(2, 0.5)).norm() <=
          1e-12);
  }
}

TEST_CASE("entropy omd approaches the softmax fixed point") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const long horizon = 30000;
  EntropyOmdOptions options = EntropyOmdOptions::Preset(horizon);
  const SoftmaxFixedPoint fp = RegularizedNeSoftmaxFixedPoint(
      -a, options.tau, 1e-12, 200000, 0.5);
  REQUIRE(fp.converged);
  double early = 0.0, late = 0.0;
  const int seeds = 3;
  for (uint64_t seed = 1; seed <= seeds; ++seed) {
    const Trajectory traj = RunEntropyBanditOmd(a, options, horizon, seed);
    early += DivergenceTo({fp.x, fp.y}, traj.profiles.At(99),
                          DivergenceKind::kKl);
    late += DivergenceTo({fp.x, fp.y}, traj.profiles.At(horizon - 1),
                         DivergenceKind::kKl);
  }
  CHECK(late / seeds < early / seeds);
}

TEST_CASE("optimistic ew: uniform is stationary under zero payoffs") {
  const MatrixXd a = MatrixXd::Zero(2, 2);
  OptimisticEwOptions options;
  options.eta = 0.02;
  options.tau = 0.3;
  options.beta = 0.0;
  const Trajectory traj = RunOptimisticRegularizedEw(a, options, 100, 7);
  for (long t = 0; t < 100; ++t) {
    CHECK((traj.profiles.PlayerAt(t, 0) - VectorXd::Constant(2, 0.5)).norm() <=
          1e-12);
  }
}

TEST_CASE("optimistic ew records two plays per round") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  OptimisticEwOptions options = OptimisticEwOptions::Preset(1000);
  const Trajectory traj = RunOptimisticRegularizedEw(a, options, 1000, 8);
  CHECK(traj.profiles.size() == 1000);
  CHECK(static_cast<long>(traj.observed_costs.size()) == 2000);
  CHECK(static_cast<long>(traj.played_arms.size()) == 4000);
}

TEST_CASE("optimistic ew with momentum stays on the simplex") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  OptimisticEwOptions options = OptimisticEwOptions::Preset(2000);
  options.rho = 0.5;
  const Trajectory traj = RunOptimisticRegularizedEw(a, options, 2000, 9);
  for (long t = 0; t < 2000; t += 37) {
    const StrategyProfile p = traj.profiles.At(t);
    CHECK(std::abs(p.points[0].sum() - 1.0) <= 1e-9);
    CHECK(p.points[0].minCoeff() > 0.0);
  }
}

TEST_CASE("baseline with eta = 0 is frozen") {
  MatrixGameSpec spec;
  spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Game game = MakeMatrixGame(spec);
  const Trajectory traj =
      RunExactGradientBaseline(game, BaselineMethod::kGdProjected, 0.0, 50);
  const StrategyProfile first = traj.profiles.At(0);
  const StrategyProfile last = traj.profiles.At(49);
  for (int i = 0; i < 2; ++i) {
    CHECK((first.points[i] - last.points[i]).norm() == 0.0);
  }
}

TEST_CASE("projected gradient matches an independent reference on the matrix game") {
  MatrixGameSpec spec;
  spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const Game game = MakeMatrixGame(spec);
  const double eta = 0.01;
  const long horizon = 10000;
  const Trajectory traj =
      RunExactGradientBaseline(game, BaselineMethod::kGdProjected, eta, horizon);
  // Independent reference: simultaneous projected gradient with its own
  // Euclidean simplex projection.
  auto project_simplex = [](VectorXd v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (size_t j = 0; j < u.size(); ++j) {
      cum += u[j];
      const double cand = (cum - 1.0) / (j + 1);
      if (u[j] - cand > 0) theta = cand;
    }
    for (int j = 0; j < v.size(); ++j) v[j] = std::max(0.0, v[j] - theta);
    return v;
  };
  VectorXd x = VectorXd::Constant(2, 0.5), y = VectorXd::Constant(2, 0.5);
  const MatrixXd& a = spec.payoff;
  for (long t = 0; t < horizon; ++t) {
    const VectorXd gx = a * y;
    const VectorXd gy = -a.transpose() * x;
    x = project_simplex(x - eta * gx);
    y = project_simplex(y - eta * gy);
  }
  const StrategyProfile last = traj.profiles.At(horizon - 1);
  CHECK((last.points[0] - x).norm() <= 1e-9);
  CHECK((last.points[1] - y).norm() <= 1e-9);
  CHECK(DualityGap(a, x, y) <= 1e-2);
}

TEST_CASE("cournot projected gradient contracts to the equilibrium") {
  const CournotParams params = DefaultCournotParams();
  const Game game = MakeCournot(params, true);
  const Trajectory traj =
      RunExactGradientBaseline(game, BaselineMethod::kGdProjected, 0.09, 10000);
  const StrategyProfile nash = CournotNash(params);
  const double dist2 =
      DivergenceTo(nash.points, traj.profiles.At(9999),
                   DivergenceKind::kSquaredEuclidean);
  CHECK(dist2 <= 1e-6);  // distance <= 1e-3
}

TEST_CASE("omd entropy baseline requires simplex sets") {
  const Game game = MakeCournot(DefaultCournotParams(), true);
  CHECK_THROWS_AS(
      RunExactGradientBaseline(game, BaselineMethod::kOmdEntropy, 0.01, 10),
      std::invalid_argument);
}

TEST_CASE("constant game sequence reproduces the static run bitwise") {
  const Game game = MakeCournot(DefaultCournotParams(), true);
  const auto geometry = DefaultGeometry(game);
  const Schedule schedule = Schedule::StronglyMonotoneMain(1, game.kappa());
  const Trajectory static_run = RunBanditMirrorDescent(
      game, geometry, schedule, 1000, NoiseSpec::None(), 21);
  const Trajectory tv_run = RunBanditMirrorDescentTimeVarying(
      [&game](long) -> const Game& { return game; }, geometry, schedule, 1000,
      NoiseSpec::None(), 21);
  CHECK(SameBytes(static_run, tv_run));
}

TEST_CASE("tracking variant runs and stays feasible under drift") {
  CournotDrift drift;
  drift.kind = CournotDrift::Kind::kSinusoidal;
  drift.amplitude = 5.0;
  drift.period = 2000;
  const TimeVaryingCournot tv(DefaultCournotParams(), drift);
  const Game base = tv.GameAt(1);
  const auto geometry = DefaultGeometry(base);
  const Schedule schedule = Schedule::Tracking(1, 0.0);
  BanditRunOptions options;
  options.variant = BanditVariant::kTracking;
  options.check_all_iterates = true;
  Game scratch = base;
  auto game_at = [&](long t) -> const Game& {
    scratch = tv.GameAt(t);
    return scratch;
  };
  const Trajectory traj = RunBanditMirrorDescentTimeVarying(
      game_at, geometry, schedule, 2000, NoiseSpec::None(), 22, options);
  CHECK(traj.profiles.size() == 2000);
}

TEST_CASE("converging drift lands near the static run's end point") {
  // Drift decaying as 1/t: the perturbed runs end close to the limit
  // equilibrium, within a small factor of the static run (median of 5 seeds).
  const CournotParams params = DefaultCournotParams();
  CournotDrift drift;
  drift.kind = CournotDrift::Kind::kDecaying;
  drift.alpha = 0.0;
  drift.k = 1.0;
  const TimeVaryingCournot tv(params, drift);
  const Game static_game = tv.LimitGame();
  const auto geometry = DefaultGeometry(static_game);
  const Schedule schedule = Schedule::MonotoneMain(1, static_game.kappa());
  const StrategyProfile nash = tv.LimitNash();
  const long horizon = 20000;
  std::vector<double> ratios;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Trajectory st = RunBanditMirrorDescent(
        static_game, geometry, schedule, horizon, NoiseSpec::None(), seed);
    Game scratch = static_game;
    auto game_at = [&](long t) -> const Game& {
      scratch = tv.GameAt(t);
      return scratch;
    };
    const Trajectory dr = RunBanditMirrorDescentTimeVarying(
        game_at, geometry, schedule, horizon, NoiseSpec::None(), seed);
    const double d_static =
        DivergenceTo(nash.points, st.profiles.At(horizon - 1),
                     DivergenceKind::kSquaredEuclidean);
    const double d_drift =
        DivergenceTo(nash.points, dr.profiles.At(horizon - 1),
                     DivergenceKind::kSquaredEuclidean);
    ratios.push_back(std::sqrt(d_drift / d_static));
  }
  std::sort(ratios.begin(), ratios.end());
  CHECK(ratios[2] <= 2.0);
}
