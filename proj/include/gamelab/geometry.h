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

#ifndef GAMELAB_GEOMETRY_H_
#define GAMELAB_GEOMETRY_H_

#include <Eigen/Dense>
#include <memory>

#include "gamelab/action_set.h"
#include "gamelab/rng.h"

namespace gamelab {

// A nu-self-concordant barrier over the interior of a convex set.
class Barrier {
 public:
  virtual ~Barrier() = default;
  virtual double Value(const VectorXd& x) const = 0;
  virtual VectorXd Gradient(const VectorXd& x) const = 0;
  virtual MatrixXd Hessian(const VectorXd& x) const = 0;
  virtual double Nu() const = 0;
  // argmin of the barrier.
  virtual VectorXd AnalyticCenter() const = 0;
  // Strict interior membership.
  virtual bool InDomain(const VectorXd& x) const = 0;
  virtual int dim() const = 0;
};

// h(x) = -sum ln(x-l) - sum ln(u-x), nu = 2d.
class BoxLogBarrier : public Barrier {
 public:
  BoxLogBarrier(VectorXd lower, VectorXd upper);
  double Value(const VectorXd& x) const override;
  VectorXd Gradient(const VectorXd& x) const override;
  MatrixXd Hessian(const VectorXd& x) const override;
  double Nu() const override { return 2.0 * lower_.size(); }
  VectorXd AnalyticCenter() const override { return 0.5 * (lower_ + upper_); }
  bool InDomain(const VectorXd& x) const override;
  int dim() const override { return static_cast<int>(lower_.size()); }

 private:
  VectorXd lower_, upper_;
};

// h(x) = -ln(1 - ||(x-c)/r||^2), nu = 1.
class BallBarrier : public Barrier {
 public:
  BallBarrier(VectorXd center, double radius);
  double Value(const VectorXd& x) const override;
  VectorXd Gradient(const VectorXd& x) const override;
  MatrixXd Hessian(const VectorXd& x) const override;
  double Nu() const override { return 1.0; }
  VectorXd AnalyticCenter() const override { return center_; }
  bool InDomain(const VectorXd& x) const override;
  int dim() const override { return static_cast<int>(center_.size()); }

 private:
  VectorXd center_;
  double radius_;
};

// Barrier for the simplex in the drop-last-coordinate embedding: over
// u in R^{d-1} with u_a > 0 and sum u < 1,
//   h(u) = -sum_a ln(u_a) - ln(1 - sum u),  nu = d.
// The Hessian is nonsingular here, unlike on the affine-constrained simplex.
class SimplexBarrier : public Barrier {
 public:
  explicit SimplexBarrier(int ambient_dim);
  double Value(const VectorXd& u) const override;
  VectorXd Gradient(const VectorXd& u) const override;
  MatrixXd Hessian(const VectorXd& u) const override;
  double Nu() const override { return ambient_dim_; }
  VectorXd AnalyticCenter() const override {
    return VectorXd::Constant(ambient_dim_ - 1, 1.0 / ambient_dim_);
  }
  bool InDomain(const VectorXd& u) const override;
  int dim() const override { return ambient_dim_ - 1; }

 private:
  int ambient_dim_;
};

// A convex regularizer p with mu*I <= Hess p <= zeta*I.
class Regularizer {
 public:
  virtual ~Regularizer() = default;
  virtual double Value(const VectorXd& x) const = 0;
  virtual VectorXd Gradient(const VectorXd& x) const = 0;
  virtual MatrixXd Hessian(const VectorXd& x) const = 0;
  virtual double Mu() const = 0;
  virtual double Zeta() const = 0;
};

// p(x) = 1/2 ||x||^2; mu = zeta = 1.
class SquaredNormRegularizer : public Regularizer {
 public:
  explicit SquaredNormRegularizer(int dim) : dim_(dim) {}
  double Value(const VectorXd& x) const override { return 0.5 * x.squaredNorm(); }
  VectorXd Gradient(const VectorXd& x) const override { return x; }
  MatrixXd Hessian(const VectorXd& x) const override {
    (void)x;
    return MatrixXd::Identity(dim_, dim_);
  }
  double Mu() const override { return 1.0; }
  double Zeta() const override { return 1.0; }

 private:
  int dim_;
};

// p(x) = <1, x>; curvature-free, D_p == 0. Usable only where a strongly
// convex p is not required.
class LinearRegularizer : public Regularizer {
 public:
  explicit LinearRegularizer(int dim) : dim_(dim) {}
  double Value(const VectorXd& x) const override { return x.sum(); }
  VectorXd Gradient(const VectorXd& x) const override {
    (void)x;
    return VectorXd::Ones(dim_);
  }
  MatrixXd Hessian(const VectorXd& x) const override {
    (void)x;
    return MatrixXd::Zero(dim_, dim_);
  }
  double Mu() const override { return 0.0; }
  double Zeta() const override { return 0.0; }

 private:
  int dim_;
};

// D_f(x, y) = f(x) - f(y) - <grad f(y), x - y>.
double Bregman(const Barrier& f, const VectorXd& x, const VectorXd& y);
double Bregman(const Regularizer& f, const VectorXd& x, const VectorXd& y);

// C_p: a bound on D_p over a set of the given diameter, from the curvature
// cap: D_p(x, y) <= (zeta/2) ||x - y||^2 <= (zeta/2) B^2.
double BregmanDiameterBound(const Regularizer& p, double set_diameter);

// KL divergence sum x_a ln(x_a / y_a), the Bregman divergence of negative
// entropy on the simplex. Natural log.
double KlDivergence(const VectorXd& x, const VectorXd& y);

// A = (Hess h(x) + eta * scale * Hess p(x))^{-1/2} via symmetric
// eigendecomposition, plus its inverse. Eigenvalues below 1e-12 signal a
// point escaping the domain and raise std::domain_error.
struct Preconditioner {
  MatrixXd a;          // (H)^{-1/2}
  MatrixXd a_inverse;  // (H)^{+1/2}
};
Preconditioner MakePreconditioner(const Barrier& h, const Regularizer& p,
                                  const VectorXd& x, double eta, double scale);
// Just the matrix A.
MatrixXd PreconditionMatrix(const Barrier& h, const Regularizer& p,
                            const VectorXd& x, double eta, double scale);

// Uniform direction on the unit sphere in R^d; ||z|| = 1 post-normalization.
VectorXd SampleUnitSphere(Rng& rng, int d);

// x + delta * A * z; feasible for delta in (0,1] by Dikin containment.
VectorXd DikinPoint(const VectorXd& x, const MatrixXd& a, const VectorXd& z,
                    double delta);

}  // namespace gamelab

#endif  // GAMELAB_GEOMETRY_H_
