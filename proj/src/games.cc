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

#include "gamelab/games.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gamelab {

namespace {

double Clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

// Exact range of c_i = x_i (d_i - a_i) + b_i x_i (x_i + s) over
// x_i in [0, C_i], s in [0, s_max], with the intercept a_i ranging over
// [a_lo, a_hi]. The cost is increasing in s and decreasing in a_i.
std::pair<double, double> CournotCostRange(double d, double a_lo, double a_hi,
                                           double b, double cap,
                                           double s_max) {
  // Maximum: a = a_lo, s = s_max, corner in x (convex in x).
  const double hi = std::max(0.0, cap * (d - a_lo) + b * cap * (cap + s_max));
  // Minimum: a = a_hi, s = 0; quadratic vertex may be interior.
  const double lin = d - a_hi;
  double lo = std::min(0.0, lin * cap + b * cap * cap);
  const double vertex = -lin / (2.0 * b);
  if (vertex > 0 && vertex < cap) {
    lo = std::min(lo, lin * vertex + b * vertex * vertex);
  }
  return {lo, hi};
}

Game MakeRawCournot(const CournotParams& params) {
  params.Validate();
  const int n = params.num_players();
  std::vector<ActionSet> sets;
  sets.reserve(n);
  for (int i = 0; i < n; ++i) {
    sets.push_back(ActionSet::Box(VectorXd::Zero(1),
                                  params.capacity.segment(i, 1)));
  }
  const CournotParams p = params;
  Game game(
      "cournot", std::move(sets),
      [p](int i, const StrategyProfile& x) {
        double total = 0.0;
        for (const auto& v : x.points) total += v[0];
        const double xi = x.points[i][0];
        return xi * (p.marginal_cost[i] - p.intercept[i] + p.slope[i] * total);
      },
      [p](int i, const StrategyProfile& x) {
        double total = 0.0;
        for (const auto& v : x.points) total += v[0];
        const double xi = x.points[i][0];
        VectorXd g(1);
        g[0] = p.marginal_cost[i] - p.intercept[i] + p.slope[i] * (total + xi);
        return g;
      });
  std::vector<double> smooth;
  double grad_bound = 0.0;
  const double total_cap = params.capacity.sum();
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    smooth.push_back(2.0 * params.slope[i]);
    grad_bound = std::max(
        grad_bound, std::abs(params.marginal_cost[i] - params.intercept[i]) +
                        params.slope[i] * (total_cap + params.capacity[i]));
    const auto [clo, chi] = CournotCostRange(
        params.marginal_cost[i], params.intercept[i], params.intercept[i],
        params.slope[i], params.capacity[i], total_cap - params.capacity[i]);
    lo = std::min(lo, clo);
    hi = std::max(hi, chi);
  }
  game.set_smoothness(std::move(smooth));
  game.set_gradient_bound(grad_bound);
  game.set_kappa(params.slope.minCoeff());
  game.set_labeled_monotone(true);
  game.set_cost_range(lo, hi);
  return game;
}

}  // namespace

void CournotParams::Validate() const {
  const int n = num_players();
  if (n < 1 || intercept.size() != n || slope.size() != n ||
      capacity.size() != n) {
    throw std::invalid_argument("CournotParams: vector sizes disagree");
  }
  if ((slope.array() <= 0).any()) {
    throw std::invalid_argument("CournotParams: slopes must be positive");
  }
  if ((capacity.array() <= 0).any()) {
    throw std::invalid_argument("CournotParams: capacities must be positive");
  }
}

CournotParams DefaultCournotParams() {
  CournotParams p;
  p.marginal_cost = VectorXd::Constant(5, 40.0);
  p.intercept = (VectorXd(5) << 30, 50, 30, 50, 30).finished();
  p.slope = (VectorXd(5) << 50, 30, 50, 30, 50).finished();
  p.capacity = VectorXd::Ones(5);
  return p;
}

CournotParams AllActiveCournotParams() {
  CournotParams p;
  p.marginal_cost = VectorXd::Constant(5, 10.0);
  p.intercept = VectorXd::Constant(5, 30.0);
  p.slope = VectorXd::Constant(5, 5.0);
  p.capacity = VectorXd::Ones(5);
  return p;
}

Game MakeCournot(const CournotParams& params, bool normalize) {
  Game raw = MakeRawCournot(params);
  return normalize ? NormalizeCosts(raw) : raw;
}

StrategyProfile CournotNash(const CournotParams& params, double tol,
                            const VectorXd* start) {
  params.Validate();
  const int n = params.num_players();
  VectorXd x = start ? *start : VectorXd::Zero(n);
  const long max_sweeps = 1000000;
  double change = 0.0;
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    change = 0.0;
    for (int i = 0; i < n; ++i) {
      const double others = x.sum() - x[i];
      const double br = Clamp((params.intercept[i] - params.marginal_cost[i] -
                               params.slope[i] * others) /
                                  (2.0 * params.slope[i]),
                              0.0, params.capacity[i]);
      change = std::max(change, std::abs(br - x[i]));
      x[i] = br;
    }
    if (change <= tol) break;
  }
  if (change > tol) {
    throw std::runtime_error("CournotNash: best-response iteration stalled");
  }
  // KKT verification at the fixed point.
  const double total = x.sum();
  const double kkt_tol = std::max(1e-8, 1e3 * tol * (1.0 + params.slope.maxCoeff() * n));
  for (int i = 0; i < n; ++i) {
    const double grad = params.marginal_cost[i] - params.intercept[i] +
                        params.slope[i] * (total + x[i]);
    if (x[i] <= tol) {
      if (grad < -kkt_tol) throw std::runtime_error("CournotNash: KKT failure at lower bound");
    } else if (x[i] >= params.capacity[i] - tol) {
      if (grad > kkt_tol) throw std::runtime_error("CournotNash: KKT failure at upper bound");
    } else if (std::abs(grad) > kkt_tol) {
      throw std::runtime_error("CournotNash: interior KKT failure");
    }
  }
  StrategyProfile profile;
  for (int i = 0; i < n; ++i) {
    profile.points.push_back(x.segment(i, 1));
  }
  return profile;
}

Game MakeMatrixGame(const MatrixGameSpec& spec, bool normalize) {
  const int m = static_cast<int>(spec.payoff.rows());
  const int k = static_cast<int>(spec.payoff.cols());
  if (m < 1 || k < 1 || !spec.payoff.allFinite()) {
    throw std::invalid_argument("MakeMatrixGame: bad payoff matrix");
  }
  std::vector<ActionSet> sets{ActionSet::Simplex(m, spec.floor_beta),
                              ActionSet::Simplex(k, spec.floor_beta)};
  const double sign = spec.row_minimizes ? 1.0 : -1.0;
  const MatrixXd a = spec.payoff;
  const double w = spec.quadratic_weight;
  Game game(
      w == 0 ? "matrix_zero_sum" : "matrix_monotone", std::move(sets),
      [a, w, sign](int i, const StrategyProfile& s) {
        const double bilinear = sign * s.points[0].dot(a * s.points[1]);
        if (i == 0) return bilinear + 0.5 * w * s.points[0].squaredNorm();
        return -bilinear + 0.5 * w * s.points[1].squaredNorm();
      },
      [a, w, sign](int i, const StrategyProfile& s) {
        if (i == 0) return VectorXd(sign * (a * s.points[1]) + w * s.points[0]);
        return VectorXd(-sign * (a.transpose() * s.points[0]) +
                        w * s.points[1]);
      });
  game.set_smoothness({w, w});
  const double row_bound = a.rowwise().lpNorm<2>().maxCoeff();
  const double col_bound = a.colwise().lpNorm<2>().maxCoeff();
  game.set_gradient_bound(std::max(row_bound, col_bound) + w);
  game.set_kappa(w);
  game.set_linear_costs(w == 0.0);
  game.set_labeled_monotone(true);
  const double amax = a.maxCoeff();
  const double amin = a.minCoeff();
  game.set_cost_range(std::min(amin, -amax),
                      std::max(amax, -amin) + 0.5 * w);
  return normalize ? NormalizeCosts(game) : game;
}

namespace {

// Solves for one player's mixed strategy supported on `support` that makes
// the opponent indifferent across `opp_support` at a common value v.
bool SolveSupportSystem(const MatrixXd& payoff_rows,
                        const std::vector<int>& support,
                        const std::vector<int>& opp_support, VectorXd* out,
                        double* value) {
  const int s = static_cast<int>(support.size());
  MatrixXd m = MatrixXd::Zero(s + 1, s + 1);
  VectorXd rhs = VectorXd::Zero(s + 1);
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      m(r, c) = payoff_rows(opp_support[r], support[c]);
    }
    m(r, s) = -1.0;  // common value v
  }
  for (int c = 0; c < s; ++c) m(s, c) = 1.0;
  rhs(s) = 1.0;
  Eigen::FullPivLU<MatrixXd> lu(m);
  if (!lu.isInvertible()) return false;
  const VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) return false;
  out->setZero();
  for (int c = 0; c < s; ++c) {
    if (sol[c] < -1e-10) return false;
    (*out)[support[c]] = std::max(0.0, sol[c]);
  }
  *value = sol[s];
  return true;
}

std::vector<std::vector<int>> Subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < n; ++j) {
      if (mask & (1 << j)) s.push_back(j);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

MatrixEquilibrium SolveMatrixGame(const MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  if (m > 12 || k > 12) {
    throw std::invalid_argument("SolveMatrixGame: support enumeration limited to small matrices");
  }
  const double tol = 1e-9;
  const auto row_supports = Subsets(m);
  const auto col_supports = Subsets(k);
  for (const auto& sx : row_supports) {
    for (const auto& sy : col_supports) {
      if (sx.size() != sy.size()) continue;
      VectorXd x = VectorXd::Zero(m), y = VectorXd::Zero(k);
      double vx = 0.0, vy = 0.0;
      // x makes the opponent's sy columns indifferent: [A'x]_b = v on sy.
      if (!SolveSupportSystem(a.transpose(), sx, sy, &x, &vx)) continue;
      // y makes the sx rows indifferent: [Ay]_a = v on sx.
      if (!SolveSupportSystem(a, sy, sx, &y, &vy)) continue;
      if (std::abs(vx - vy) > 1e-7) continue;
      // Equilibrium inequalities: min player rows satisfy [Ay]_a >= v,
      // max player columns satisfy [A'x]_b <= v.
      const VectorXd ay = a * y;
      const VectorXd atx = a.transpose() * x;
      const double v = vx;
      bool ok = true;
      for (int r = 0; r < m && ok; ++r) ok = ay[r] >= v - tol;
      for (int c = 0; c < k && ok; ++c) ok = atx[c] <= v + tol;
      if (!ok) continue;
      MatrixEquilibrium eq;
      eq.x = x;
      eq.y = y;
      eq.value = v;
      return eq;
    }
  }
  throw std::runtime_error("SolveMatrixGame: no equilibrium found (unexpected)");
}

TimeVaryingCournot::TimeVaryingCournot(CournotParams base, CournotDrift drift,
                                       bool normalize)
    : base_(std::move(base)), drift_(drift), normalize_(normalize) {
  base_.Validate();
  // One affine map shared by every step: range the intercepts over the
  // drift envelope.
  const double dev = drift_.kind == CournotDrift::Kind::kSinusoidal
                         ? std::abs(drift_.amplitude)
                         : std::abs(drift_.k);
  const int n = base_.num_players();
  const double total_cap = base_.capacity.sum();
  lo_ = 0.0;
  hi_ = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [clo, chi] = CournotCostRange(
        base_.marginal_cost[i], base_.intercept[i] - dev,
        base_.intercept[i] + dev, base_.slope[i], base_.capacity[i],
        total_cap - base_.capacity[i]);
    lo_ = std::min(lo_, clo);
    hi_ = std::max(hi_, chi);
  }
}

CournotParams TimeVaryingCournot::ParamsAt(long t) const {
  CournotParams p = base_;
  double shift = 0.0;
  if (drift_.kind == CournotDrift::Kind::kSinusoidal) {
    shift = drift_.amplitude * std::sin(2.0 * M_PI * t / drift_.period);
  } else {
    shift = drift_.k * std::pow(static_cast<double>(t), -(1.0 - drift_.alpha));
  }
  p.intercept = base_.intercept.array() + shift;
  return p;
}

Game TimeVaryingCournot::GameAt(long t) const {
  Game raw = MakeRawCournot(ParamsAt(t));
  raw.set_cost_range(lo_, hi_);
  return normalize_ ? NormalizeCosts(raw) : raw;
}

StrategyProfile TimeVaryingCournot::NashAt(long t) const {
  return CournotNash(ParamsAt(t));
}

Game TimeVaryingCournot::LimitGame() const {
  Game raw = MakeRawCournot(base_);
  raw.set_cost_range(lo_, hi_);
  return normalize_ ? NormalizeCosts(raw) : raw;
}

StrategyProfile TimeVaryingCournot::LimitNash() const {
  return CournotNash(base_);
}

double TimeVaryingCournot::VariationPath(long horizon) const {
  double total = 0.0;
  StrategyProfile prev = NashAt(1);
  for (long t = 2; t <= horizon; ++t) {
    const StrategyProfile cur = NashAt(t);
    double step = 0.0;
    for (int i = 0; i < base_.num_players(); ++i) {
      step += (cur.points[i] - prev.points[i]).squaredNorm();
    }
    total += std::sqrt(step);
    prev = cur;
  }
  return total;
}

}  // namespace gamelab
