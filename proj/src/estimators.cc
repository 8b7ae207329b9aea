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

#include "gamelab/estimators.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace gamelab {

GradientEstimate EllipsoidalEstimateWithInverse(double cost,
                                                const MatrixXd& a_inverse,
                                                const VectorXd& z, int d,
                                                double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("EllipsoidalEstimate: delta must be in (0, 1]");
  }
  GradientEstimate est;
  est.g = (static_cast<double>(d) / delta) * cost * (a_inverse * z);
  est.observed_cost = cost;
  est.z = z;
  est.delta = delta;
  return est;
}

GradientEstimate EllipsoidalEstimate(double cost, const MatrixXd& a,
                                     const VectorXd& z, int d, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("EllipsoidalEstimate: delta must be in (0, 1]");
  }
  Eigen::LLT<MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("EllipsoidalEstimate: A is not SPD");
  }
  GradientEstimate est;
  est.g = (static_cast<double>(d) / delta) * cost * llt.solve(z);
  est.observed_cost = cost;
  est.z = z;
  est.delta = delta;
  return est;
}

GradientEstimate SimplexImportanceEstimate(int played, double payoff,
                                           const VectorXd& x, double beta,
                                           double tau, int sign) {
  if (played < 0 || played >= x.size()) {
    throw std::out_of_range("SimplexImportanceEstimate: played out of range");
  }
  if (x[played] + beta <= 0.0) {
    throw std::domain_error(
        "SimplexImportanceEstimate: zero denominator x[played] + beta");
  }
  GradientEstimate est;
  est.g = VectorXd::Zero(x.size());
  est.g[played] = payoff / (x[played] + beta);
  if (tau != 0.0) {
    for (int a = 0; a < x.size(); ++a) {
      if (x[a] <= 0.0) {
        throw std::domain_error(
            "SimplexImportanceEstimate: ln(0) in the tau term");
      }
      est.g[a] += sign * tau * std::log(x[a]);
    }
    est.has_tau_term = true;
  }
  est.observed_cost = payoff;
  est.played = played;
  est.beta = beta;
  return est;
}

VectorXd MomentumUpdate(const VectorXd& prev, const VectorXd& fresh,
                        double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("MomentumUpdate: rho must be in (0, 1]");
  }
  if (prev.size() != fresh.size()) {
    throw std::invalid_argument("MomentumUpdate: size mismatch");
  }
  return (1.0 - rho) * prev + rho * fresh;
}

}  // namespace gamelab
