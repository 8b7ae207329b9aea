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

#include "gamelab/prox.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gamelab {

ProxResult BarrierProxStep(const Barrier& h, const Regularizer& p,
                           const VectorXd& x_t, const VectorXd& g, double eta,
                           double kappa, double scale, double tol,
                           int max_iters) {
  if (tol <= 0) throw std::invalid_argument("BarrierProxStep: tol must be > 0");
  if (scale < 0) throw std::invalid_argument("BarrierProxStep: scale must be >= 0");
  if (!h.InDomain(x_t)) {
    throw std::domain_error("BarrierProxStep: x_t must be strictly interior");
  }
  const double w = eta * kappa * scale;  // coefficient of the D_p term
  const VectorXd grad_p_t = p.Gradient(x_t);
  const VectorXd grad_h_t = h.Gradient(x_t);

  auto residual_at = [&](const VectorXd& x) -> VectorXd {
    return eta * g + w * (p.Gradient(x) - grad_p_t) + h.Gradient(x) - grad_h_t;
  };

  ProxResult result;
  VectorXd x = x_t;
  VectorXd grad = residual_at(x);
  result.stationarity_residual = grad.norm();
  if (result.stationarity_residual <= tol) {
    result.x_next = x;
    result.status = ProxStatus::kConverged;
    return result;
  }

  for (int iter = 1; iter <= max_iters; ++iter) {
    MatrixXd hess = h.Hessian(x);
    if (w > 0) hess += w * p.Hessian(x);
    if (!hess.allFinite() || !grad.allFinite()) {
      throw std::runtime_error("BarrierProxStep: non-finite objective terms");
    }
    Eigen::LLT<MatrixXd> llt(hess);
    if (llt.info() != Eigen::Success) {
      result.x_next = x;
      result.newton_iterations = iter - 1;
      result.status = ProxStatus::kBoundaryEscape;
      return result;
    }
    const VectorXd dx = -llt.solve(grad);
    const double lambda = std::sqrt(std::max(0.0, -grad.dot(dx)));
    double step = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;

    // Backtrack if the full step would leave the domain.
    VectorXd candidate = x + step * dx;
    int halvings = 0;
    while (!h.InDomain(candidate) && halvings < 60) {
      step *= 0.5;
      candidate = x + step * dx;
      ++halvings;
    }
    if (!h.InDomain(candidate)) {
      result.x_next = x;
      result.newton_iterations = iter;
      result.stationarity_residual = grad.norm();
      result.status = ProxStatus::kBoundaryEscape;
      return result;
    }
    x = candidate;
    grad = residual_at(x);
    result.newton_iterations = iter;
    result.stationarity_residual = grad.norm();
    if (result.stationarity_residual <= tol) {
      result.x_next = x;
      result.status = ProxStatus::kConverged;
      return result;
    }
  }
  result.x_next = x;
  result.status = ProxStatus::kMaxIters;
  return result;
}

VectorXd ClipToFloor(const VectorXd& x, double beta) {
  const int d = static_cast<int>(x.size());
  if (beta <= 0) return x;
  if (beta * d > 1.0 + 1e-12) {
    throw std::invalid_argument("ClipToFloor: beta*d must be <= 1");
  }
  std::vector<bool> pinned(d, false);
  VectorXd out(d);
  for (int pass = 0; pass < d; ++pass) {
    int num_pinned = 0;
    double free_weight = 0.0;
    for (int a = 0; a < d; ++a) {
      if (pinned[a]) {
        ++num_pinned;
      } else {
        free_weight += x[a];
      }
    }
    const double free_mass = 1.0 - beta * num_pinned;
    bool new_violation = false;
    for (int a = 0; a < d; ++a) {
      if (pinned[a]) {
        out[a] = beta;
        continue;
      }
      out[a] = free_weight > 0 ? free_mass * x[a] / free_weight : free_mass / (d - num_pinned);
      if (out[a] < beta) {
        pinned[a] = true;
        new_violation = true;
      }
    }
    if (!new_violation) return out;
  }
  return VectorXd::Constant(d, beta);
}

VectorXd KlProxClippedSimplex(const VectorXd& x_t, const VectorXd& g,
                              double eta, double beta) {
  const int d = static_cast<int>(x_t.size());
  if (eta <= 0) throw std::invalid_argument("KlProxClippedSimplex: eta must be > 0");
  if (x_t.size() != g.size()) {
    throw std::invalid_argument("KlProxClippedSimplex: size mismatch");
  }
  if (beta * d >= 1.0 - 1e-15 && beta * d <= 1.0 + 1e-12) {
    // Singleton domain.
    return VectorXd::Constant(d, beta);
  }
  // Unconstrained exponentiated-gradient weights, stabilized by the max.
  VectorXd logw = x_t.array().log() - eta * g.array();
  const double m = logw.maxCoeff();
  VectorXd w = (logw.array() - m).exp();

  // Active-set loop: pin all current violators each pass; terminates in at
  // most d passes and the result is order-independent.
  std::vector<bool> pinned(d, false);
  VectorXd x(d);
  for (int pass = 0; pass <= d; ++pass) {
    int num_pinned = 0;
    double free_weight = 0.0;
    for (int a = 0; a < d; ++a) {
      if (pinned[a]) {
        ++num_pinned;
      } else {
        free_weight += w[a];
      }
    }
    const double free_mass = 1.0 - beta * num_pinned;
    bool new_violation = false;
    for (int a = 0; a < d; ++a) {
      if (pinned[a]) {
        x[a] = beta;
        continue;
      }
      x[a] = free_mass * w[a] / free_weight;
      if (x[a] < beta) {
        pinned[a] = true;
        new_violation = true;
      }
    }
    if (!new_violation) return x;
  }
  return VectorXd::Constant(d, beta);
}

VectorXd Softmax(const VectorXd& logits) {
  const double m = logits.maxCoeff();
  VectorXd e = (logits.array() - m).exp();
  return e / e.sum();
}

std::pair<VectorXd, VectorXd> OptimisticExponentiatedPair(
    const VectorXd& x_t, const VectorXd& g_prev, const VectorXd& g_half,
    double eta, double tau) {
  if (eta * tau >= 1.0) {
    throw std::invalid_argument("OptimisticExponentiatedPair: requires eta*tau < 1");
  }
  if ((x_t.array() <= 0).any()) {
    throw std::domain_error(
        "OptimisticExponentiatedPair: x_t must be strictly positive");
  }
  const VectorXd base = (1.0 - eta * tau) * x_t.array().log().matrix();
  VectorXd x_half = Softmax(base - eta * g_prev);
  VectorXd x_next = Softmax(base - eta * g_half);
  return {std::move(x_half), std::move(x_next)};
}

SoftmaxFixedPoint RegularizedNeSoftmaxFixedPoint(const MatrixXd& a, double tau,
                                                 double tol, int max_iters,
                                                 double damping,
                                                 const VectorXd* x0,
                                                 const VectorXd* y0) {
  if (tau <= 0) throw std::invalid_argument("fixed point: tau must be > 0");
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("fixed point: damping must be in (0, 1]");
  }
  const int m = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  SoftmaxFixedPoint fp;
  fp.x = x0 ? *x0 : VectorXd::Constant(m, 1.0 / m);
  fp.y = y0 ? *y0 : VectorXd::Constant(k, 1.0 / k);
  for (int iter = 1; iter <= max_iters; ++iter) {
    const VectorXd x_target = Softmax(a * fp.y / tau);
    const VectorXd y_target = Softmax(-a.transpose() * fp.x / tau);
    const double res =
        std::max((fp.x - x_target).lpNorm<Eigen::Infinity>(),
                 (fp.y - y_target).lpNorm<Eigen::Infinity>());
    fp.residual = res;
    fp.iterations = iter;
    if (res <= tol) {
      fp.converged = true;
      return fp;
    }
    fp.x = (1.0 - damping) * fp.x + damping * x_target;
    fp.y = (1.0 - damping) * fp.y + damping * y_target;
  }
  fp.converged = false;
  return fp;
}

}  // namespace gamelab
