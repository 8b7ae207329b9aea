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

#include "gamelab/action_set.h"
#include "gamelab/prox.h"
#include "gamelab/rng.h"

using namespace gamelab;

namespace {

// Test-only oracle: minimize <g,x> + (1/eta) KL(x, x_t) over the clipped
// simplex by exhaustive enumeration of active sets (every subset pinned at
// beta, free coordinates proportional to the exponentiated weights), keeping
// the best feasible candidate by objective value.
VectorXd KlProxByEnumeration(const VectorXd& x_t, const VectorXd& g,
                             double eta, double beta) {
  const int d = static_cast<int>(x_t.size());
  VectorXd w(d);
  for (int a = 0; a < d; ++a) w[a] = x_t[a] * std::exp(-eta * g[a]);
  auto objective = [&](const VectorXd& x) {
    double val = 0.0;
    for (int a = 0; a < d; ++a) {
      val += g[a] * x[a];
      if (x[a] > 0) val += (x[a] * std::log(x[a] / x_t[a])) / eta;
    }
    return val;
  };
  double best_val = 1e300;
  VectorXd best = x_t;
  for (int mask = 0; mask < (1 << d); ++mask) {
    double free_weight = 0.0;
    int pinned = 0;
    for (int a = 0; a < d; ++a) {
      if (mask & (1 << a)) {
        ++pinned;
      } else {
        free_weight += w[a];
      }
    }
    if (pinned == d) continue;
    const double free_mass = 1.0 - beta * pinned;
    if (free_mass < 0) continue;
    VectorXd x(d);
    bool feasible = true;
    for (int a = 0; a < d; ++a) {
      x[a] = (mask & (1 << a)) ? beta : free_mass * w[a] / free_weight;
      if (x[a] < beta - 1e-12) feasible = false;
    }
    if (!feasible) continue;
    const double val = objective(x);
    if (val < best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

// Scalar bisection on the 1-d stationarity equation of the barrier prox.
double BarrierProx1dBisection(double x_t, double g, double eta, double w) {
  // eta*g + w*(x - x_t) + (-1/x + 1/(1-x)) - (-1/x_t + 1/(1-x_t)) = 0
  auto residual = [&](double x) {
    return eta * g + w * (x - x_t) + (-1.0 / x + 1.0 / (1.0 - x)) -
           (-1.0 / x_t + 1.0 / (1.0 - x_t));
  };
  double lo = 1e-12, hi = 1.0 - 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("barrier prox: zero gradient is a fixed point") {
  BoxLogBarrier box(VectorXd::Zero(2), VectorXd::Ones(2));
  SquaredNormRegularizer p(2);
  const VectorXd x_t = VectorXd::Constant(2, 0.3);
  const ProxResult r =
      BarrierProxStep(box, p, x_t, VectorXd::Zero(2), 0.1, 2.0, 17.0);
  CHECK(r.status == ProxStatus::kConverged);
  CHECK(r.newton_iterations <= 1);
  CHECK((r.x_next - x_t).norm() <= 1e-14);
}

TEST_CASE("barrier prox: hand example on the unit interval") {
  BoxLogBarrier box(VectorXd::Zero(1), VectorXd::Ones(1));
  SquaredNormRegularizer p(1);
  const VectorXd x_t = VectorXd::Constant(1, 0.5);
  const VectorXd g = VectorXd::Constant(1, 1.0);
  const ProxResult r = BarrierProxStep(box, p, x_t, g, 0.1, 0.0, 0.0);
  CHECK(r.status == ProxStatus::kConverged);
  const double oracle = BarrierProx1dBisection(0.5, 1.0, 0.1, 0.0);
  CHECK(r.x_next[0] == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(r.x_next[0] == doctest::Approx(0.4875).epsilon(1e-3));
}

TEST_CASE("barrier prox: 1-d stationarity matches bisection with D_p term") {
  Rng rng(2);
  BoxLogBarrier box(VectorXd::Zero(1), VectorXd::Ones(1));
  SquaredNormRegularizer p(1);
  for (int s = 0; s < 200; ++s) {
    const double x0 = rng.Uniform(0.05, 0.95);
    const double g = rng.Uniform(-20.0, 20.0);
    const double eta = rng.Uniform(0.001, 0.4);
    const double kappa = rng.Uniform(0.0, 2.0);
    const double scale = rng.Uniform(0.0, 50.0);
    const ProxResult r = BarrierProxStep(box, p, VectorXd::Constant(1, x0),
                                         VectorXd::Constant(1, g), eta, kappa,
                                         scale);
    REQUIRE(r.status == ProxStatus::kConverged);
    const double oracle = BarrierProx1dBisection(x0, g, eta, eta * kappa * scale);
    CHECK(r.x_next[0] == doctest::Approx(oracle).epsilon(1e-7));
  }
}

TEST_CASE("barrier prox: residual contract on random ball instances") {
  Rng rng(3);
  BallBarrier ball(VectorXd::Zero(3), 1.0);
  SquaredNormRegularizer p(3);
  const ActionSet set = ActionSet::Ball(VectorXd::Zero(3), 1.0);
  for (int s = 0; s < 1000; ++s) {
    VectorXd x_t = set.Sample(rng) * 0.9;
    VectorXd g(3);
    for (int j = 0; j < 3; ++j) g[j] = rng.Uniform(-30.0, 30.0);
    const double eta = rng.Uniform(0.001, 0.3);
    const double kappa = rng.Uniform(0.0, 3.0);
    const double scale = rng.Uniform(0.0, 100.0);
    const ProxResult r = BarrierProxStep(ball, p, x_t, g, eta, kappa, scale);
    REQUIRE(r.status == ProxStatus::kConverged);
    CHECK(r.stationarity_residual <= 1e-8);
    CHECK(ball.InDomain(r.x_next));
  }
}

TEST_CASE("barrier prox: optimality against random feasible probes") {
  Rng rng(4);
  BallBarrier ball(VectorXd::Zero(2), 1.0);
  SquaredNormRegularizer p(2);
  const ActionSet set = ActionSet::Ball(VectorXd::Zero(2), 1.0);
  for (int s = 0; s < 300; ++s) {
    const VectorXd x_t = set.Sample(rng) * 0.9;
    VectorXd g(2);
    for (int j = 0; j < 2; ++j) g[j] = rng.Uniform(-10.0, 10.0);
    const double eta = rng.Uniform(0.001, 0.3);
    const double kappa = rng.Uniform(0.0, 2.0);
    const double scale = rng.Uniform(0.0, 30.0);
    const double w = eta * kappa * scale;
    auto objective = [&](const VectorXd& x) {
      return eta * g.dot(x) + w * Bregman(p, x, x_t) + Bregman(ball, x, x_t);
    };
    const ProxResult r = BarrierProxStep(ball, p, x_t, g, eta, kappa, scale);
    REQUIRE(r.status == ProxStatus::kConverged);
    const double opt = objective(r.x_next);
    for (int probe = 0; probe < 50; ++probe) {
      const VectorXd candidate = set.Sample(rng) * 0.999;
      CHECK(opt <= objective(candidate) + 1e-9);
    }
  }
}

TEST_CASE("barrier prox: residual contract on the embedded simplex") {
  Rng rng(33);
  SimplexBarrier barrier(3);  // u in R^2, u > 0, sum u < 1
  SquaredNormRegularizer p(2);
  for (int s = 0; s < 300; ++s) {
    VectorXd u(2);
    u[0] = rng.Uniform(0.05, 0.6);
    u[1] = rng.Uniform(0.05, 0.9 - u[0]);
    VectorXd g(2);
    for (int j = 0; j < 2; ++j) g[j] = rng.Uniform(-20.0, 20.0);
    const double eta = rng.Uniform(0.001, 0.25);
    const double kappa = rng.Uniform(0.0, 2.0);
    const double scale = rng.Uniform(0.0, 100.0);
    const ProxResult r = BarrierProxStep(barrier, p, u, g, eta, kappa, scale);
    REQUIRE(r.status == ProxStatus::kConverged);
    CHECK(r.stationarity_residual <= 1e-8);
    CHECK(barrier.InDomain(r.x_next));
  }
}

TEST_CASE("kl prox: zero gradient leaves the point") {
  const VectorXd x = (VectorXd(3) << 0.2, 0.5, 0.3).finished();
  const VectorXd out = KlProxClippedSimplex(x, VectorXd::Zero(3), 0.5, 0.1);
  CHECK((out - x).norm() <= 1e-15);
}

TEST_CASE("kl prox: closed-form exponentiated-gradient example") {
  const VectorXd x = VectorXd::Constant(2, 0.5);
  VectorXd g(2);
  g << std::log(3.0), 0.0;
  const VectorXd out = KlProxClippedSimplex(x, g, 1.0, 0.0);
  CHECK(out[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("kl prox: the floor pins the violating coordinate") {
  const VectorXd x = VectorXd::Constant(2, 0.5);
  VectorXd g(2);
  g << std::log(3.0), 0.0;
  const VectorXd out = KlProxClippedSimplex(x, g, 1.0, 0.3);
  CHECK(out[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("kl prox: beta*d = 1 gives the singleton") {
  const VectorXd x = VectorXd::Constant(2, 0.5);
  VectorXd g(2);
  g << 5.0, -3.0;
  const VectorXd out = KlProxClippedSimplex(x, g, 1.0, 0.5);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(0.5));
}

TEST_CASE("kl prox: matches exhaustive active-set enumeration") {
  Rng rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const int d = 2 + (trial % 2);
    const double beta = rng.Uniform(0.0, 0.9 / d);
    // A point on the clipped simplex: floor plus normalized slack.
    VectorXd slack(d);
    for (int a = 0; a < d; ++a) slack[a] = rng.Uniform(0.01, 1.0);
    slack *= (1.0 - beta * d) / slack.sum();
    VectorXd x = slack.array() + beta;
    VectorXd g(d);
    for (int a = 0; a < d; ++a) g[a] = rng.Uniform(-8.0, 8.0);
    const double eta = rng.Uniform(0.01, 2.0);
    const VectorXd fast = KlProxClippedSimplex(x, g, eta, beta);
    const VectorXd slow = KlProxByEnumeration(x, g, eta, beta);
    CHECK((fast - slow).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("kl prox with beta = 0 is the closed-form exponentiated update") {
  Rng rng(55);
  for (int s = 0; s < 500; ++s) {
    const int d = 2 + rng.UniformInt(4);
    VectorXd x(d);
    for (int a = 0; a < d; ++a) x[a] = 0.02 + rng.Uniform();
    x /= x.sum();
    VectorXd g(d);
    for (int a = 0; a < d; ++a) g[a] = rng.Uniform(-10.0, 10.0);
    const double eta = rng.Uniform(0.01, 1.5);
    VectorXd closed = x;
    for (int a = 0; a < d; ++a) closed[a] *= std::exp(-eta * g[a]);
    closed /= closed.sum();
    const VectorXd fast = KlProxClippedSimplex(x, g, eta, 0.0);
    CHECK((fast - closed).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("optimistic pair: no update without gradients or regularization") {
  const VectorXd x = (VectorXd(2) << 0.6, 0.4).finished();
  const auto [half, next] = OptimisticExponentiatedPair(
      x, VectorXd::Zero(2), VectorXd::Zero(2), 0.5, 0.0);
  CHECK((half - x).norm() <= 1e-15);
  CHECK((next - x).norm() <= 1e-15);
}

TEST_CASE("optimistic pair: eta*tau -> 1 erases history") {
  const VectorXd x = (VectorXd(2) << 0.9, 0.1).finished();
  const auto [half, next] = OptimisticExponentiatedPair(
      x, VectorXd::Zero(2), VectorXd::Zero(2), 1.0, 1.0 - 1e-12);
  CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(next[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(OptimisticExponentiatedPair(x, VectorXd::Zero(2),
                                              VectorXd::Zero(2), 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("optimistic pair: power-and-normalize arithmetic") {
  const VectorXd x = (VectorXd(2) << 0.8, 0.2).finished();
  const auto [half, next] = OptimisticExponentiatedPair(
      x, VectorXd::Zero(2), VectorXd::Zero(2), 0.5, 0.4);
  const double w0 = std::pow(0.8, 0.8), w1 = std::pow(0.2, 0.8);
  CHECK(half[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-12));
  CHECK(half[0] == doctest::Approx(0.7519).epsilon(1e-3));
  CHECK(next[1] == doctest::Approx(0.2481).epsilon(1e-3));
}

TEST_CASE("optimistic pair: zero entries are a domain error") {
  const VectorXd x = (VectorXd(2) << 1.0, 0.0).finished();
  CHECK_THROWS_AS(OptimisticExponentiatedPair(x, VectorXd::Zero(2),
                                              VectorXd::Zero(2), 0.5, 0.1),
                  std::domain_error);
}

TEST_CASE("optimistic pair coincides with the kl prox at tau = 0") {
  Rng rng(6);
  for (int s = 0; s < 500; ++s) {
    const int d = 2 + rng.UniformInt(3);
    VectorXd x(d);
    for (int a = 0; a < d; ++a) x[a] = 0.05 + rng.Uniform();
    x /= x.sum();
    VectorXd g(d);
    for (int a = 0; a < d; ++a) g[a] = rng.Uniform(-5.0, 5.0);
    const double eta = rng.Uniform(0.01, 1.0);
    const auto [half, next] = OptimisticExponentiatedPair(x, g, g, eta, 0.0);
    const VectorXd mw = KlProxClippedSimplex(x, g, eta, 0.0);
    CHECK((half - mw).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK((next - mw).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("softmax fixed point: zero matrix gives uniform") {
  const SoftmaxFixedPoint fp =
      RegularizedNeSoftmaxFixedPoint(MatrixXd::Zero(2, 3), 0.5);
  CHECK(fp.converged);
  CHECK((fp.x - VectorXd::Constant(2, 0.5)).norm() <= 1e-12);
  CHECK((fp.y - VectorXd::Constant(3, 1.0 / 3.0)).norm() <= 1e-12);
}

TEST_CASE("softmax fixed point: huge tau flattens to uniform") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const SoftmaxFixedPoint fp = RegularizedNeSoftmaxFixedPoint(a, 1e6, 1e-13);
  CHECK(fp.converged);
  CHECK((fp.x - VectorXd::Constant(2, 0.5)).lpNorm<Eigen::Infinity>() <= 1e-5);
  CHECK((fp.y - VectorXd::Constant(2, 0.5)).lpNorm<Eigen::Infinity>() <= 1e-5);
}

TEST_CASE("softmax fixed point: residual and 1-d bisection cross-check") {
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const double tau = 1.0;
  const SoftmaxFixedPoint fp = RegularizedNeSoftmaxFixedPoint(a, tau, 1e-12);
  REQUIRE(fp.converged);
  // Substitute back into both softmax equations.
  const VectorXd x_check = Softmax(a * fp.y / tau);
  const VectorXd y_check = Softmax(-a.transpose() * fp.x / tau);
  CHECK((fp.x - x_check).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK((fp.y - y_check).lpNorm<Eigen::Infinity>() <= 1e-10);
  // Independent oracle: reduce to a scalar fixed point in x1 and bisect on
  // monotone mismatch.
  auto y_of_x = [&](double x1) {
    VectorXd x(2);
    x << x1, 1.0 - x1;
    return Softmax(-a.transpose() * x / tau);
  };
  auto x_of_y = [&](const VectorXd& y) { return Softmax(a * y / tau); };
  auto mismatch = [&](double x1) { return x_of_y(y_of_x(x1))[0] - x1; };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mismatch(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  CHECK(fp.x[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
}

TEST_CASE("softmax fixed point: unique limit from 20 random starts") {
  Rng rng(7);
  const MatrixXd a = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
  const SoftmaxFixedPoint base = RegularizedNeSoftmaxFixedPoint(a, 1.0, 1e-12);
  REQUIRE(base.converged);
  for (int s = 0; s < 20; ++s) {
    VectorXd x0(2), y0(2);
    x0 << 0.05 + rng.Uniform(0.0, 0.9), 0.0;
    x0[1] = 1.0 - x0[0];
    y0 << 0.05 + rng.Uniform(0.0, 0.9), 0.0;
    y0[1] = 1.0 - y0[0];
    const SoftmaxFixedPoint fp =
        RegularizedNeSoftmaxFixedPoint(a, 1.0, 1e-12, 100000, 1.0, &x0, &y0);
    REQUIRE(fp.converged);
    CHECK((fp.x - base.x).norm() <= 1e-8);
    CHECK((fp.y - base.y).norm() <= 1e-8);
  }
}
