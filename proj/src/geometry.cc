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

#include "gamelab/geometry.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace gamelab {

namespace {
constexpr double kEigenvalueFloor = 1e-12;
}

// -- BoxLogBarrier ------------------------------------------------------------

BoxLogBarrier::BoxLogBarrier(VectorXd lower, VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() ||
      !(lower_.array() < upper_.array()).all()) {
    throw std::invalid_argument("BoxLogBarrier: requires lower < upper");
  }
}

bool BoxLogBarrier::InDomain(const VectorXd& x) const {
  return x.size() == lower_.size() && (x.array() > lower_.array()).all() &&
         (x.array() < upper_.array()).all();
}

double BoxLogBarrier::Value(const VectorXd& x) const {
  if (!InDomain(x)) throw std::domain_error("BoxLogBarrier: point on/outside boundary");
  return -((x - lower_).array().log().sum() + (upper_ - x).array().log().sum());
}

VectorXd BoxLogBarrier::Gradient(const VectorXd& x) const {
  if (!InDomain(x)) throw std::domain_error("BoxLogBarrier: point on/outside boundary");
  return (upper_ - x).cwiseInverse() - (x - lower_).cwiseInverse();
}

MatrixXd BoxLogBarrier::Hessian(const VectorXd& x) const {
  if (!InDomain(x)) throw std::domain_error("BoxLogBarrier: point on/outside boundary");
  const VectorXd diag = (x - lower_).array().square().inverse() +
                        (upper_ - x).array().square().inverse();
  return diag.asDiagonal();
}

// -- BallBarrier --------------------------------------------------------------

BallBarrier::BallBarrier(VectorXd center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (radius_ <= 0) throw std::invalid_argument("BallBarrier: radius must be > 0");
}

bool BallBarrier::InDomain(const VectorXd& x) const {
  return x.size() == center_.size() && (x - center_).norm() < radius_;
}

double BallBarrier::Value(const VectorXd& x) const {
  if (!InDomain(x)) throw std::domain_error("BallBarrier: point on/outside boundary");
  const double s = (x - center_).squaredNorm() / (radius_ * radius_);
  return -std::log(1.0 - s);
}

VectorXd BallBarrier::Gradient(const VectorXd& x) const {
  if (!InDomain(x)) throw std::domain_error("BallBarrier: point on/outside boundary");
  const VectorXd v = (x - center_) / radius_;
  return (2.0 / (radius_ * (1.0 - v.squaredNorm()))) * v;
}

MatrixXd BallBarrier::Hessian(const VectorXd& x) const {
  if (!InDomain(x)) throw std::domain_error("BallBarrier: point on/outside boundary");
  const VectorXd v = (x - center_) / radius_;
  const double w = 1.0 - v.squaredNorm();
  const int d = dim();
  return (2.0 / (radius_ * radius_)) *
         (MatrixXd::Identity(d, d) / w + (2.0 / (w * w)) * v * v.transpose());
}

// -- SimplexBarrier -------------------------------------------------------

SimplexBarrier::SimplexBarrier(int ambient_dim) : ambient_dim_(ambient_dim) {
  if (ambient_dim < 2) {
    throw std::invalid_argument("SimplexBarrier: ambient_dim must be >= 2");
  }
}

bool SimplexBarrier::InDomain(const VectorXd& u) const {
  return u.size() == ambient_dim_ - 1 && (u.array() > 0).all() && u.sum() < 1.0;
}

double SimplexBarrier::Value(const VectorXd& u) const {
  if (!InDomain(u)) throw std::domain_error("SimplexBarrier: point on/outside boundary");
  return -u.array().log().sum() - std::log(1.0 - u.sum());
}

VectorXd SimplexBarrier::Gradient(const VectorXd& u) const {
  if (!InDomain(u)) throw std::domain_error("SimplexBarrier: point on/outside boundary");
  const double slack = 1.0 - u.sum();
  return VectorXd(-u.cwiseInverse().array() + 1.0 / slack);
}

MatrixXd SimplexBarrier::Hessian(const VectorXd& u) const {
  if (!InDomain(u)) throw std::domain_error("SimplexBarrier: point on/outside boundary");
  const double slack = 1.0 - u.sum();
  const int d = dim();
  MatrixXd hess = MatrixXd::Constant(d, d, 1.0 / (slack * slack));
  hess.diagonal() += u.array().square().inverse().matrix();
  return hess;
}

// -- Bregman divergences --------------------------------------------------

namespace {
template <typename F>
double BregmanImpl(const F& f, const VectorXd& x, const VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Bregman: size mismatch");
  return f.Value(x) - f.Value(y) - f.Gradient(y).dot(x - y);
}
}  // namespace

double Bregman(const Barrier& f, const VectorXd& x, const VectorXd& y) {
  return BregmanImpl(f, x, y);
}

double Bregman(const Regularizer& f, const VectorXd& x, const VectorXd& y) {
  return BregmanImpl(f, x, y);
}

double BregmanDiameterBound(const Regularizer& p, double set_diameter) {
  return 0.5 * p.Zeta() * set_diameter * set_diameter;
}

double KlDivergence(const VectorXd& x, const VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("KlDivergence: size mismatch");
  double kl = 0.0;
  for (int a = 0; a < x.size(); ++a) {
    if (x[a] < 0 || y[a] <= 0) {
      throw std::domain_error("KlDivergence: requires x >= 0 and y > 0");
    }
    if (x[a] > 0) kl += x[a] * std::log(x[a] / y[a]);
  }
  return kl;
}

// -- Preconditioner -------------------------------------------------------

Preconditioner MakePreconditioner(const Barrier& h, const Regularizer& p,
                                  const VectorXd& x, double eta, double scale) {
  if (eta * scale < 0) {
    throw std::invalid_argument("MakePreconditioner: eta*scale must be >= 0");
  }
  MatrixXd combined = h.Hessian(x);
  const double weight = eta * scale;
  if (weight > 0) combined += weight * p.Hessian(x);
  if (!combined.allFinite()) {
    throw std::runtime_error("MakePreconditioner: non-finite Hessian");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(combined);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("MakePreconditioner: eigendecomposition failed");
  }
  const VectorXd& lambda = eig.eigenvalues();
  if (lambda.minCoeff() < kEigenvalueFloor) {
    // Masks boundary-escape bugs if regularized silently, so fail loudly.
    throw std::domain_error("MakePreconditioner: combined Hessian not PD");
  }
  const MatrixXd& u = eig.eigenvectors();
  Preconditioner out;
  out.a = u * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  out.a_inverse = u * lambda.cwiseSqrt().asDiagonal() * u.transpose();
  return out;
}

MatrixXd PreconditionMatrix(const Barrier& h, const Regularizer& p,
                            const VectorXd& x, double eta, double scale) {
  return MakePreconditioner(h, p, x, eta, scale).a;
}

VectorXd SampleUnitSphere(Rng& rng, int d) {
  if (d < 1) throw std::invalid_argument("SampleUnitSphere: d must be >= 1");
  VectorXd z(d);
  for (;;) {
    for (int j = 0; j < d; ++j) z[j] = rng.Gaussian();
    const double norm = z.norm();
    if (norm > 0) return z / norm;
  }
}

VectorXd DikinPoint(const VectorXd& x, const MatrixXd& a, const VectorXd& z,
                    double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("DikinPoint: delta must be in (0, 1]");
  }
  return x + delta * (a * z);
}

}  // namespace gamelab
