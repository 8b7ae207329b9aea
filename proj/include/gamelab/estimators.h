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

#ifndef GAMELAB_ESTIMATORS_H_
#define GAMELAB_ESTIMATORS_H_

#include <Eigen/Core>

#include "gamelab/geometry.h"

namespace gamelab {

// A one-point gradient estimate together with its perturbation record.
struct GradientEstimate {
  VectorXd g;
  double observed_cost = 0.0;
  // Ellipsoidal record.
  VectorXd z;
  double delta = 1.0;
  // Simplex record.
  int played = -1;
  double beta = 0.0;
  bool has_tau_term = false;
};

// g = (d / delta) * cost * A^{-1} z: the one-point ellipsoidal estimator,
// unbiased for the gradient of the smoothed cost E_w c(x + delta*A*w).
GradientEstimate EllipsoidalEstimate(double cost, const MatrixXd& a,
                                     const VectorXd& z, int d, double delta);
// Hot-path overload with the precomputed inverse.
GradientEstimate EllipsoidalEstimateWithInverse(double cost,
                                                const MatrixXd& a_inverse,
                                                const VectorXd& z, int d,
                                                double delta);

// Importance-weighted simplex estimator:
//   g[a] = 1{a == played} * payoff / (x[a] + beta) + sign * tau * ln(x[a]).
// beta = 0 gives the exactly unbiased form (denominator x[a] itself, which
// the clipped domain keeps >= floor); beta > 0 gives the offset variant.
GradientEstimate SimplexImportanceEstimate(int played, double payoff,
                                           const VectorXd& x, double beta,
                                           double tau, int sign);

// (1 - rho) * prev + rho * fresh, rho in (0, 1].
VectorXd MomentumUpdate(const VectorXd& prev, const VectorXd& fresh,
                        double rho);

}  // namespace gamelab

#endif  // GAMELAB_ESTIMATORS_H_
