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

#include "gamelab/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace gamelab {

double DualityGap(const MatrixXd& a, const VectorXd& x, const VectorXd& y) {
  if (x.size() != a.rows() || y.size() != a.cols()) {
    throw std::invalid_argument("DualityGap: dimension mismatch");
  }
  const double best_col = (a.transpose() * x).maxCoeff();
  const double best_row = (a * y).minCoeff();
  return best_col - best_row;
}

double GapFunction(const Game& game, const StrategyProfile& x,
                   const StrategyProfile& ref) {
  if (!game.has_gradients()) {
    throw std::logic_error("GapFunction: gradient oracle required");
  }
  double gap = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    gap += EvaluateGradient(game, i, x).dot(x.points[i] - ref.points[i]);
  }
  return gap * game.cost_span();
}

double DivergenceTo(const std::vector<VectorXd>& reference,
                    const StrategyProfile& profile, DivergenceKind kind,
                    const Regularizer* p) {
  if (static_cast<int>(reference.size()) != profile.num_players()) {
    throw std::invalid_argument("DivergenceTo: player count mismatch");
  }
  double total = 0.0;
  for (int i = 0; i < profile.num_players(); ++i) {
    const VectorXd& ref = reference[i];
    const VectorXd& x = profile.points[i];
    switch (kind) {
      case DivergenceKind::kSquaredEuclidean:
        total += (ref - x).squaredNorm();
        break;
      case DivergenceKind::kBregmanP:
        if (p == nullptr) {
          throw std::invalid_argument("DivergenceTo: regularizer required");
        }
        total += Bregman(*p, ref, x);
        break;
      case DivergenceKind::kKl:
        total += KlDivergence(ref, x);
        break;
    }
  }
  return total;
}

namespace {

// Golden-section minimization of a convex scalar function on [lo, hi].
double GoldenSection(const std::function<double(double)>& f, double lo,
                     double hi, double tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<MetricSample> IndividualRegret(const Trajectory& trajectory,
                                           const Game& game, int player,
                                           int comparator_resolution,
                                           int grid_per_decade) {
  if (comparator_resolution < 2) {
    throw std::invalid_argument("IndividualRegret: resolution must be >= 2");
  }
  const long horizon = trajectory.profiles.size();
  if (horizon == 0 || trajectory.played.size() != horizon) {
    throw std::invalid_argument("IndividualRegret: trajectory lacks profiles");
  }
  const ActionSet& set = game.action_set(player);

  // Materialize the mean-iterate series once; probes mutate only the
  // player's slot.
  std::vector<StrategyProfile> profiles;
  profiles.reserve(horizon);
  for (long t = 0; t < horizon; ++t) profiles.push_back(trajectory.profiles.At(t));

  // Cumulative cost of a fixed action against the opponents' series.
  auto cumulative_cost = [&](const VectorXd& omega) {
    double total = 0.0;
    for (long t = 0; t < horizon; ++t) {
      profiles[t].points[player] = omega;
      total += EvaluateCost(game, player, profiles[t]);
    }
    return total;
  };

  // Hindsight-optimal fixed action.
  VectorXd best;
  if (set.kind() == SetKind::kBox && set.dim() == 1) {
    const double lo = set.lower()[0], hi = set.upper()[0];
    const double omega = GoldenSection(
        [&](double v) {
          return cumulative_cost(VectorXd::Constant(1, v));
        },
        lo, hi);
    best = VectorXd::Constant(1, omega);
  } else {
    double best_value = std::numeric_limits<double>::infinity();
    auto consider = [&](const VectorXd& omega) {
      const double v = cumulative_cost(omega);
      if (v < best_value) {
        best_value = v;
        best = omega;
      }
    };
    if (set.kind() == SetKind::kSimplex) {
      // Vertices of the (clipped) simplex plus an interior grid.
      const int d = set.dim();
      const double beta = set.floor_beta();
      for (int a = 0; a < d; ++a) {
        VectorXd v = VectorXd::Constant(d, beta);
        v[a] = 1.0 - beta * (d - 1);
        consider(v);
      }
      Rng grid_rng(12345);
      for (int s = 0; s < comparator_resolution; ++s) {
        consider(set.Sample(grid_rng));
      }
    } else {
      Rng grid_rng(12345);
      for (int s = 0; s < comparator_resolution * comparator_resolution; ++s) {
        consider(set.Sample(grid_rng));
      }
    }
  }

  // Running cumulative regret: received minus comparator, sampled on the
  // metric grid.
  const std::vector<long> grid = MetricGrid(horizon, grid_per_decade);
  std::vector<MetricSample> out;
  out.reserve(grid.size());
  double received = 0.0;
  double comparator = 0.0;
  size_t gi = 0;
  for (long t = 0; t < horizon; ++t) {
    profiles[t].points[player] =
        VectorXd(trajectory.played.PlayerAt(t, player));
    received += EvaluateCost(game, player, profiles[t]);
    profiles[t].points[player] = best;
    comparator += EvaluateCost(game, player, profiles[t]);
    if (gi < grid.size() && t + 1 == grid[gi]) {
      out.push_back(MetricSample{grid[gi], "regret_" + std::to_string(player),
                                 (received - comparator) * game.cost_span(),
                                 trajectory.seed});
      ++gi;
    }
  }
  return out;
}

double FitRate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("FitRate: need at least 2 points");
  }
  std::vector<double> slopes;
  slopes.reserve(points.size() * (points.size() - 1) / 2);
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      const double dx = points[j].first - points[i].first;
      if (dx != 0.0) {
        slopes.push_back((points[j].second - points[i].second) / dx);
      }
    }
  }
  if (slopes.empty()) throw std::invalid_argument("FitRate: degenerate abscissae");
  std::sort(slopes.begin(), slopes.end());
  const size_t mid = slopes.size() / 2;
  if (slopes.size() % 2 == 1) return slopes[mid];
  return 0.5 * (slopes[mid - 1] + slopes[mid]);
}

double FitRate(const std::vector<MetricSample>& series, double t_lo,
               double t_hi) {
  std::vector<std::pair<double, double>> points;
  for (const auto& s : series) {
    if (s.t >= t_lo && s.t <= t_hi) {
      if (s.value <= 0) {
        throw std::domain_error("FitRate: nonpositive value in window");
      }
      points.emplace_back(std::log(static_cast<double>(s.t)),
                          std::log(s.value));
    }
  }
  if (points.size() < 10) {
    throw std::invalid_argument("FitRate: need >= 10 samples in window");
  }
  return FitRate(points);
}

}  // namespace gamelab
