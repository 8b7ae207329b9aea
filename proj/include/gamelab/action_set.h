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

#ifndef GAMELAB_ACTION_SET_H_
#define GAMELAB_ACTION_SET_H_

#include <Eigen/Core>

#include "gamelab/rng.h"

namespace gamelab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class SetKind { kBox, kBall, kSimplex };

// A compact convex action set: an axis-aligned box, a Euclidean ball, or the
// probability simplex with an optional coordinate floor beta (the clipped
// simplex {x : sum x = 1, x_a >= beta}).
class ActionSet {
 public:
  static ActionSet Box(const VectorXd& lower, const VectorXd& upper);
  static ActionSet Ball(const VectorXd& center, double radius);
  static ActionSet Simplex(int dim, double floor_beta = 0.0);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Exact Euclidean diameter of the set.
  double diameter() const { return diameter_; }
  double floor_beta() const { return floor_beta_; }
  const VectorXd& lower() const { return lower_; }
  const VectorXd& upper() const { return upper_; }
  const VectorXd& center() const { return center_; }
  double radius() const { return radius_; }

  bool Contains(const VectorXd& x, double tol = 1e-9) const;
  // Euclidean projection onto the set. Idempotent.
  VectorXd Project(const VectorXd& y) const;
  // A point strictly inside the set (box/ball center, uniform distribution).
  VectorXd InteriorPoint() const;
  // Uniform-ish sample used by audits and property tests.
  VectorXd Sample(Rng& rng) const;

 private:
  ActionSet() = default;

  SetKind kind_;
  int dim_ = 0;
  double diameter_ = 0.0;
  VectorXd lower_, upper_;   // box
  VectorXd center_;          // ball
  double radius_ = 0.0;      // ball
  double floor_beta_ = 0.0;  // simplex
};

// Euclidean projection onto {y >= 0, sum y = total}.
VectorXd ProjectToScaledSimplex(const VectorXd& y, double total);

}  // namespace gamelab

#endif  // GAMELAB_ACTION_SET_H_
