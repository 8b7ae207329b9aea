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

#include "gamelab/action_set.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gamelab {

namespace {
// Membership tolerance on the simplex; renormalization error accumulates
// over long runs, see the kl prox.
constexpr double kSimplexTol = 1e-12;
}  // namespace

ActionSet ActionSet::Box(const VectorXd& lower, const VectorXd& upper) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw std::invalid_argument("Box: dimension mismatch");
  }
  if (!((lower.array() < upper.array()).all())) {
    throw std::invalid_argument("Box: requires lower < upper componentwise");
  }
  ActionSet s;
  s.kind_ = SetKind::kBox;
  s.dim_ = static_cast<int>(lower.size());
  s.lower_ = lower;
  s.upper_ = upper;
  s.diameter_ = (upper - lower).norm();
  return s;
}

ActionSet ActionSet::Ball(const VectorXd& center, double radius) {
  if (radius <= 0) throw std::invalid_argument("Ball: radius must be > 0");
  ActionSet s;
  s.kind_ = SetKind::kBall;
  s.dim_ = static_cast<int>(center.size());
  s.center_ = center;
  s.radius_ = radius;
  s.diameter_ = 2.0 * radius;
  return s;
}

ActionSet ActionSet::Simplex(int dim, double floor_beta) {
  if (dim < 1) throw std::invalid_argument("Simplex: dim must be >= 1");
  if (floor_beta < 0 || floor_beta * dim > 1.0) {
    throw std::invalid_argument("Simplex: requires 0 <= beta and beta*dim <= 1");
  }
  ActionSet s;
  s.kind_ = SetKind::kSimplex;
  s.dim_ = dim;
  s.floor_beta_ = floor_beta;
  // Diameter between two clipped vertices: sqrt(2) * (1 - d*beta).
  s.diameter_ = dim > 1 ? std::sqrt(2.0) * (1.0 - dim * floor_beta) : 0.0;
  return s;
}

bool ActionSet::Contains(const VectorXd& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case SetKind::kBox:
      return (x.array() >= lower_.array() - tol).all() &&
             (x.array() <= upper_.array() + tol).all();
    case SetKind::kBall:
      return (x - center_).norm() <= radius_ + tol;
    case SetKind::kSimplex:
      return std::abs(x.sum() - 1.0) <= kSimplexTol + tol &&
             (x.array() >= floor_beta_ - kSimplexTol - tol).all();
  }
  return false;
}

VectorXd ProjectToScaledSimplex(const VectorXd& y, double total) {
  const int d = static_cast<int>(y.size());
  if (total <= 0) {
    return VectorXd::Zero(d);
  }
  std::vector<double> u(y.data(), y.data() + d);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  for (int j = 0; j < d; ++j) {
    cum += u[j];
    const double candidate = (cum - total) / (j + 1);
    if (u[j] - candidate > 0) theta = candidate;
  }
  return (y.array() - theta).max(0.0);
}

VectorXd ActionSet::Project(const VectorXd& y) const {
  if (y.size() != dim_) throw std::invalid_argument("Project: bad dimension");
  switch (kind_) {
    case SetKind::kBox:
      return y.cwiseMax(lower_).cwiseMin(upper_);
    case SetKind::kBall: {
      const VectorXd delta = y - center_;
      const double norm = delta.norm();
      if (norm <= radius_) return y;
      return center_ + delta * (radius_ / norm);
    }
    case SetKind::kSimplex: {
      // Shift by the floor and project onto the scaled standard simplex.
      const double free_mass = 1.0 - floor_beta_ * dim_;
      const VectorXd shifted = y.array() - floor_beta_;
      return ProjectToScaledSimplex(shifted, free_mass).array() + floor_beta_;
    }
  }
  throw std::logic_error("unreachable");
}

VectorXd ActionSet::InteriorPoint() const {
  switch (kind_) {
    case SetKind::kBox:
      return 0.5 * (lower_ + upper_);
    case SetKind::kBall:
      return center_;
    case SetKind::kSimplex:
      return VectorXd::Constant(dim_, 1.0 / dim_);
  }
  throw std::logic_error("unreachable");
}

VectorXd ActionSet::Sample(Rng& rng) const {
  switch (kind_) {
    case SetKind::kBox: {
      VectorXd x(dim_);
      for (int j = 0; j < dim_; ++j) {
        x[j] = rng.Uniform(lower_[j], upper_[j]);
      }
      return x;
    }
    case SetKind::kBall: {
      VectorXd z(dim_);
      for (int j = 0; j < dim_; ++j) z[j] = rng.Gaussian();
      const double norm = z.norm();
      if (norm == 0) return center_;
      const double r = radius_ * std::pow(rng.Uniform(), 1.0 / dim_);
      return center_ + z * (r / norm);
    }
    case SetKind::kSimplex: {
      // Dirichlet(1,...,1) over the free mass above the floor.
      VectorXd e(dim_);
      for (int j = 0; j < dim_; ++j) e[j] = -std::log(1.0 - rng.Uniform());
      const double sum = e.sum();
      const double free_mass = 1.0 - floor_beta_ * dim_;
      return (e * (free_mass / sum)).array() + floor_beta_;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace gamelab
