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

#ifndef GAMELAB_PROX_H_
#define GAMELAB_PROX_H_

#include <utility>

#include "gamelab/geometry.h"

namespace gamelab {

enum class ProxStatus { kConverged, kMaxIters, kBoundaryEscape };

struct ProxResult {
  VectorXd x_next;
  int newton_iterations = 0;
  double stationarity_residual = 0.0;
  ProxStatus status = ProxStatus::kConverged;
};

// Solves argmin_x { eta <g, x> + eta*kappa*scale * D_p(x, x_t) + D_h(x, x_t) }
// by damped Newton on the self-concordant objective: steps of length
// lambda/(1+lambda) while the Newton decrement lambda > 1/4, full steps after,
// until the stationarity residual
//   || eta g + eta*kappa*scale (grad p(x) - grad p(x_t)) + grad h(x) - grad h(x_t) ||
// drops below tol.
ProxResult BarrierProxStep(const Barrier& h, const Regularizer& p,
                           const VectorXd& x_t, const VectorXd& g, double eta,
                           double kappa, double scale, double tol = 1e-10,
                           int max_iters = 100);

// Exact minimizer of <g, x> + (1/eta) KL(x, x_t) over the clipped simplex
// {x : sum x = 1, x_a >= beta}. The unconstrained solution is
// x proportional to x_t * exp(-eta g); coordinates falling below beta are
// pinned by an active-set loop (all current violators per pass).
VectorXd KlProxClippedSimplex(const VectorXd& x_t, const VectorXd& g,
                              double eta, double beta);

// Pins coordinates below beta to beta and renormalizes the free mass.
VectorXd ClipToFloor(const VectorXd& x, double beta);

// The optimistic two-step exponentiated pair, descent form: both outputs are
// computed from the SAME base x_t with exponent (1 - eta*tau),
//   x_half propto x_t^{1-eta*tau} exp(-eta g_prev),
//   x_next propto x_t^{1-eta*tau} exp(-eta g_half).
// Gradients are cost gradients; maximizers pass negated payoffs.
std::pair<VectorXd, VectorXd> OptimisticExponentiatedPair(
    const VectorXd& x_t, const VectorXd& g_prev, const VectorXd& g_half,
    double eta, double tau);

// Fixed point of the entropy-regularized matrix game (x maximizes x'Ay):
//   x = softmax(A y / tau),  y = softmax(-A' x / tau),
// found by damped iteration. For the min_x-orientation pass -A.
struct SoftmaxFixedPoint {
  VectorXd x, y;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};
SoftmaxFixedPoint RegularizedNeSoftmaxFixedPoint(
    const MatrixXd& a, double tau, double tol = 1e-12, int max_iters = 100000,
    double damping = 1.0, const VectorXd* x0 = nullptr,
    const VectorXd* y0 = nullptr);

VectorXd Softmax(const VectorXd& logits);

}  // namespace gamelab

#endif  // GAMELAB_PROX_H_
