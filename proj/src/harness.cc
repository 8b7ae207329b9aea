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

#include "gamelab/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gamelab/algorithms.h"
#include "gamelab/games.h"
#include "gamelab/metrics.h"
#include "gamelab/prox.h"

namespace gamelab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void RejectUnknownKeys(const json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
    }
  }
}

void RequireKey(const json& obj, const std::string& key,
                const std::string& where) {
  if (!obj.contains(key)) {
    throw std::invalid_argument("missing required key '" + key + "' in " + where);
  }
}

MatrixXd ParseMatrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::invalid_argument("payoff must be a 2-d array");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  MatrixXd a(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) {
      throw std::invalid_argument("payoff rows have unequal length");
    }
    for (int c = 0; c < cols; ++c) a(r, c) = j[r][c].get<double>();
  }
  return a;
}

VectorXd ParseVector(const json& j) {
  VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

struct GameContext {
  Game game;
  // Time-varying pieces (empty unless the config declares a drift).
  std::shared_ptr<TimeVaryingCournot> time_varying;
  // Raw payoff matrix for matrix games (duality-gap metrics).
  std::optional<MatrixXd> payoff;
  std::optional<CournotParams> cournot;
};

CournotParams CournotParamsFromJson(const json& params) {
  if (params.contains("preset")) {
    const std::string preset = params.at("preset").get<std::string>();
    if (preset == "default") return DefaultCournotParams();
    if (preset == "all_active") return AllActiveCournotParams();
    throw std::invalid_argument("unknown cournot preset: " + preset);
  }
  RequireKey(params, "marginal_cost", "game");
  RequireKey(params, "intercept", "game");
  RequireKey(params, "slope", "game");
  CournotParams p;
  p.marginal_cost = ParseVector(params.at("marginal_cost"));
  p.intercept = ParseVector(params.at("intercept"));
  p.slope = ParseVector(params.at("slope"));
  // Capacities default to 1.
  p.capacity = params.contains("capacity")
                   ? ParseVector(params.at("capacity"))
                   : VectorXd::Ones(p.marginal_cost.size());
  p.Validate();
  return p;
}

GameContext BuildGame(const RunConfig& config) {
  const json& params = config.game_params;
  if (config.game_name == "cournot") {
    RejectUnknownKeys(params,
                      {"preset", "marginal_cost", "intercept", "slope",
                       "capacity", "normalize", "drift"},
                      "game");
    CournotParams p = CournotParamsFromJson(params);
    const bool normalize = params.value("normalize", true);
    if (params.contains("drift")) {
      const json& dj = params.at("drift");
      RejectUnknownKeys(dj, {"kind", "amplitude", "period", "alpha", "k"},
                        "game.drift");
      CournotDrift drift;
      const std::string kind = dj.value("kind", std::string("sinusoidal"));
      if (kind == "sinusoidal") {
        drift.kind = CournotDrift::Kind::kSinusoidal;
        drift.amplitude = dj.value("amplitude", 5.0);
        drift.period = dj.value("period", static_cast<double>(config.horizon));
      } else if (kind == "decaying") {
        drift.kind = CournotDrift::Kind::kDecaying;
        drift.alpha = dj.value("alpha", 0.25);
        drift.k = dj.value("k", 1.0);
      } else {
        throw std::invalid_argument("unknown drift kind: " + kind);
      }
      auto tv = std::make_shared<TimeVaryingCournot>(p, drift, normalize);
      GameContext ctx{tv->LimitGame(), tv, std::nullopt, p};
      return ctx;
    }
    return GameContext{MakeCournot(p, normalize), nullptr, std::nullopt, p};
  }
  if (config.game_name == "matrix_zero_sum" ||
      config.game_name == "matrix_monotone") {
    RejectUnknownKeys(params,
                      {"payoff", "quadratic_weight", "floor_beta", "normalize"},
                      "game");
    MatrixGameSpec spec;
    spec.payoff = params.contains("payoff")
                      ? ParseMatrix(params.at("payoff"))
                      : (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
    spec.quadratic_weight = params.value(
        "quadratic_weight", config.game_name == "matrix_monotone" ? 1.0 : 0.0);
    spec.floor_beta = params.value("floor_beta", 0.0);
    const bool normalize = params.value("normalize", false);
    return GameContext{MakeMatrixGame(spec, normalize), nullptr, spec.payoff,
                       std::nullopt};
  }
  throw std::invalid_argument("unknown game name: " + config.game_name);
}

Schedule BuildSchedule(const RunConfig& config, const GameContext& ctx,
                       int geom_dim) {
  const json& ov = config.schedule_overrides;
  RejectUnknownKeys(
      ov, {"preset", "eta", "delta", "kappa", "tau", "beta", "rho", "phi", "sigma"},
      "schedule");
  Schedule s;
  s.preset = config.schedule_preset.empty()
                 ? SchedulePreset::kCustom
                 : PresetFromName(config.schedule_preset);
  s.dim = geom_dim;
  s.kappa = ctx.game.kappa();
  s.sigma = config.noise_sigma;
  s.horizon = config.horizon;
  if (s.preset == SchedulePreset::kLinearTau) {
    s.tau = std::pow(static_cast<double>(config.horizon), -1.0 / 6.0);
  }
  if (ov.contains("eta")) s.eta_override = ov.at("eta").get<double>();
  if (ov.contains("delta")) s.delta_override = ov.at("delta").get<double>();
  if (ov.contains("kappa")) s.kappa = ov.at("kappa").get<double>();
  if (ov.contains("tau")) s.tau = ov.at("tau").get<double>();
  if (ov.contains("beta")) s.beta = ov.at("beta").get<double>();
  if (ov.contains("rho")) s.rho = ov.at("rho").get<double>();
  if (ov.contains("phi")) s.phi = ov.at("phi").get<double>();
  if (ov.contains("sigma")) s.sigma = ov.at("sigma").get<double>();
  return s;
}

int MaxGeomDim(const std::vector<PlayerGeometry>& geometry) {
  int d = 1;
  for (const auto& g : geometry) d = std::max(d, g.geom_dim());
  return d;
}

// Appends a divergence-to-reference series sampled on the grid.
void AppendDivergenceSeries(std::vector<MetricSample>* out,
                            const Trajectory& traj,
                            const std::vector<VectorXd>& reference,
                            DivergenceKind kind, const std::string& name,
                            int per_decade) {
  const std::vector<long> grid = MetricGrid(traj.profiles.size(), per_decade);
  for (long t : grid) {
    out->push_back(MetricSample{
        t, name, DivergenceTo(reference, traj.profiles.At(t - 1), kind),
        traj.seed});
  }
}

void AppendDualityGapSeries(std::vector<MetricSample>* out,
                            const Trajectory& traj, const MatrixXd& payoff,
                            int per_decade) {
  const std::vector<long> grid = MetricGrid(traj.profiles.size(), per_decade);
  for (long t : grid) {
    const StrategyProfile p = traj.profiles.At(t - 1);
    out->push_back(MetricSample{
        t, "duality_gap", DualityGap(payoff, p.points[0], p.points[1]),
        traj.seed});
  }
}

void AppendGapFunctionSeries(std::vector<MetricSample>* out,
                             const Trajectory& traj, const Game& game,
                             const StrategyProfile& ref, int per_decade) {
  const std::vector<long> grid = MetricGrid(traj.profiles.size(), per_decade);
  for (long t : grid) {
    out->push_back(MetricSample{
        t, "gap_function", GapFunction(game, traj.profiles.At(t - 1), ref),
        traj.seed});
  }
}

void AppendSocialWelfareSeries(std::vector<MetricSample>* out,
                               const Trajectory& traj, const Game& game,
                               int per_decade) {
  const std::vector<long> grid = MetricGrid(traj.profiles.size(), per_decade);
  for (long t : grid) {
    const StrategyProfile p = traj.profiles.At(t - 1);
    double sw = 0.0;
    for (int i = 0; i < game.num_players(); ++i) {
      sw += EvaluateCost(game, i, p);
    }
    const double lo = game.has_cost_range() ? game.cost_lo() : 0.0;
    out->push_back(MetricSample{
        t, "social_welfare",
        sw * game.cost_span() + game.num_players() * (game.normalized() ? lo : 0.0),
        traj.seed});
  }
}

}  // namespace

RunConfig ParseConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    // An empty or malformed file fails validation like an empty object.
    j = json::object();
  }
  return ParseConfigJson(j);
}

RunConfig ParseConfigJson(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("missing required key 'game' in config");
  }
  RejectUnknownKeys(j,
                    {"game", "algorithm", "schedule", "T", "seeds",
                     "noise_sigma", "metrics", "out_dir", "grid_per_decade"},
                    "config");
  RequireKey(j, "game", "config");
  RequireKey(j, "algorithm", "config");
  RequireKey(j, "T", "config");
  RequireKey(j, "seeds", "config");

  RunConfig c;
  c.raw = j;
  const json& game = j.at("game");
  RequireKey(game, "name", "game");
  c.game_name = game.at("name").get<std::string>();
  c.game_params = game;
  c.game_params.erase("name");
  c.algorithm = j.at("algorithm").get<std::string>();
  c.horizon = j.at("T").get<long>();
  if (c.horizon < 1) throw std::invalid_argument("T must be >= 1");
  for (const auto& s : j.at("seeds")) c.seeds.push_back(s.get<uint64_t>());
  if (c.seeds.empty()) throw std::invalid_argument("seeds must be nonempty");
  c.noise_sigma = j.value("noise_sigma", 0.0);
  if (j.contains("metrics")) {
    for (const auto& m : j.at("metrics")) c.metrics.push_back(m.get<std::string>());
  }
  c.out_dir = j.value("out_dir", std::string());
  c.grid_per_decade = j.value("grid_per_decade", 40);
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    RejectUnknownKeys(s,
                      {"preset", "eta", "delta", "kappa", "tau", "beta", "rho",
                       "phi", "sigma"},
                      "schedule");
    c.schedule_overrides = s;
    if (s.contains("preset")) {
      c.schedule_preset = s.at("preset").get<std::string>();
      c.schedule_overrides.erase("preset");
      PresetFromName(c.schedule_preset);  // validate
    }
  }

  // Name and compatibility validation (fail at parse time, not run time).
  const std::set<std::string> known_algorithms = {
      "bandit_md", "linear_tau",   "entropy_omd", "optimistic_ew",
      "gd_projected", "omd_entropy", "tracking",    "converging"};
  if (!known_algorithms.count(c.algorithm)) {
    throw std::invalid_argument("unknown algorithm: " + c.algorithm);
  }
  const bool is_matrix = c.game_name == "matrix_zero_sum" ||
                         c.game_name == "matrix_monotone";
  const bool is_cournot = c.game_name == "cournot";
  if (!is_matrix && !is_cournot) {
    throw std::invalid_argument("unknown game name: " + c.game_name);
  }
  if ((c.algorithm == "entropy_omd" || c.algorithm == "optimistic_ew") &&
      !is_matrix) {
    throw std::invalid_argument(
        "algorithm " + c.algorithm + " requires a matrix game");
  }
  if (c.algorithm == "linear_tau" &&
      (is_cournot || c.game_name == "matrix_monotone")) {
    throw std::invalid_argument(
        "incompatible pairing: linear_tau applies to linear-cost games only");
  }
  if (c.algorithm == "bandit_md" && c.game_name == "matrix_zero_sum") {
    throw std::invalid_argument(
        "incompatible pairing: bandit_md needs curvature (kappa > 0); use "
        "linear_tau for zero-sum matrix games");
  }
  if ((c.algorithm == "tracking" || c.algorithm == "converging") &&
      !c.game_params.contains("drift")) {
    throw std::invalid_argument(c.algorithm + " requires game.drift");
  }
  if (c.algorithm == "omd_entropy" && !is_matrix) {
    throw std::invalid_argument("omd_entropy requires simplex action sets");
  }
  return c;
}

std::string ConfigHash(const json& config) {
  json canon = config;
  canon.erase("out_dir");
  canon.erase("parallelism");
  const std::string dump = canon.dump();
  uint64_t h = 1469598103934665603ull;  // FNV offset basis
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;  // FNV prime
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::vector<MetricSample> RunConfigSeed(const RunConfig& config,
                                        uint64_t seed) {
  GameContext ctx = BuildGame(config);
  std::vector<MetricSample> out;
  const int per_decade = config.grid_per_decade;

  auto wants = [&](const std::string& name) {
    return config.metrics.empty() ||
           std::find(config.metrics.begin(), config.metrics.end(), name) !=
               config.metrics.end();
  };

  const NoiseSpec noise = config.noise_sigma > 0
                              ? NoiseSpec::Uniform(config.noise_sigma)
                              : NoiseSpec::None();

  Trajectory traj;
  double entropy_tau = 0.0;

  if (config.algorithm == "bandit_md" || config.algorithm == "linear_tau" ||
      config.algorithm == "tracking" || config.algorithm == "converging") {
    const std::vector<PlayerGeometry> geometry = DefaultGeometry(ctx.game);
    Schedule schedule = BuildSchedule(config, ctx, MaxGeomDim(geometry));
    BanditRunOptions options;
    if (config.algorithm == "linear_tau") {
      options.variant = BanditVariant::kLinearTau;
      if (schedule.preset == SchedulePreset::kCustom && !schedule.eta_override) {
        schedule = Schedule::LinearTau(schedule.dim, config.horizon);
      }
    } else if (config.algorithm == "tracking") {
      options.variant = BanditVariant::kTracking;
    }
    if (ctx.time_varying) {
      auto tv = ctx.time_varying;
      Game scratch = tv->GameAt(1);
      auto game_at = [tv, &scratch](long t) -> const Game& {
        scratch = tv->GameAt(t);
        return scratch;
      };
      traj = RunBanditMirrorDescentTimeVarying(game_at, geometry, schedule,
                                               config.horizon, noise, seed,
                                               options);
    } else {
      traj = RunBanditMirrorDescent(ctx.game, geometry, schedule,
                                    config.horizon, noise, seed, options);
    }
  } else if (config.algorithm == "entropy_omd") {
    EntropyOmdOptions options = EntropyOmdOptions::Preset(config.horizon);
    const json& ov = config.schedule_overrides;
    if (ov.contains("eta")) options.eta = ov.at("eta").get<double>();
    if (ov.contains("tau")) options.tau = ov.at("tau").get<double>();
    if (ov.contains("beta")) options.beta = ov.at("beta").get<double>();
    traj = RunEntropyBanditOmd(*ctx.payoff, options, config.horizon, seed);
    entropy_tau = options.tau;
  } else if (config.algorithm == "optimistic_ew") {
    OptimisticEwOptions options = OptimisticEwOptions::Preset(config.horizon);
    const json& ov = config.schedule_overrides;
    if (ov.contains("eta")) options.eta = ov.at("eta").get<double>();
    if (ov.contains("tau")) options.tau = ov.at("tau").get<double>();
    if (ov.contains("beta")) options.beta = ov.at("beta").get<double>();
    if (ov.contains("rho")) options.rho = ov.at("rho").get<double>();
    traj = RunOptimisticRegularizedEw(*ctx.payoff, options, config.horizon,
                                      seed);
    entropy_tau = options.tau;
  } else if (config.algorithm == "gd_projected" ||
             config.algorithm == "omd_entropy") {
    const json& ov = config.schedule_overrides;
    if (!ov.contains("eta")) {
      throw std::invalid_argument("baselines require schedule.eta");
    }
    const BaselineMethod method = config.algorithm == "gd_projected"
                                      ? BaselineMethod::kGdProjected
                                      : BaselineMethod::kOmdEntropy;
    traj = RunExactGradientBaseline(ctx.game, method,
                                    ov.at("eta").get<double>(),
                                    config.horizon);
    traj.seed = seed;
  } else {
    throw std::invalid_argument("unknown algorithm: " + config.algorithm);
  }

  // Metric series.
  if (ctx.payoff && wants("duality_gap")) {
    AppendDualityGapSeries(&out, traj, *ctx.payoff, per_decade);
  }
  if (ctx.cournot && !ctx.time_varying &&
      (wants("dist2_nash") || wants("gap_function"))) {
    const StrategyProfile nash = CournotNash(*ctx.cournot);
    if (wants("dist2_nash")) {
      AppendDivergenceSeries(&out, traj, nash.points,
                             DivergenceKind::kSquaredEuclidean, "dist2_nash",
                             per_decade);
    }
    if (wants("gap_function") && ctx.game.has_gradients()) {
      AppendGapFunctionSeries(&out, traj, ctx.game, nash, per_decade);
    }
  }
  if (ctx.payoff && wants("dist2_nash") && ctx.game.kappa() == 0.0) {
    const MatrixEquilibrium eq = SolveMatrixGame(*ctx.payoff);
    AppendDivergenceSeries(&out, traj, {eq.x, eq.y},
                           DivergenceKind::kSquaredEuclidean, "dist2_nash",
                           per_decade);
  }
  if (ctx.payoff && entropy_tau > 0 && wants("kl_to_ztau")) {
    // The dynamics descend costs (x minimizes x'Ay), so the regularized
    // equilibrium is the softmax fixed point of the negated matrix.
    const SoftmaxFixedPoint fp =
        RegularizedNeSoftmaxFixedPoint(-*ctx.payoff, entropy_tau, 1e-12, 200000, 0.5);
    if (fp.converged) {
      AppendDivergenceSeries(&out, traj, {fp.x, fp.y}, DivergenceKind::kKl,
                             "kl_to_ztau", per_decade);
    }
  }
  if (ctx.time_varying && config.algorithm == "converging" &&
      wants("dist2_limit_nash")) {
    AppendDivergenceSeries(&out, traj, ctx.time_varying->LimitNash().points,
                           DivergenceKind::kSquaredEuclidean,
                           "dist2_limit_nash", per_decade);
  }
  if (ctx.time_varying && config.algorithm == "tracking" &&
      wants("tracking_gap_avg")) {
    // Running average of the per-step gap at the played profile against the
    // per-step equilibrium.
    const std::vector<long> grid = MetricGrid(config.horizon, per_decade);
    size_t gi = 0;
    double running = 0.0;
    for (long t = 1; t <= config.horizon; ++t) {
      const Game g = ctx.time_varying->GameAt(t);
      const StrategyProfile star = ctx.time_varying->NashAt(t);
      const StrategyProfile played = traj.played.At(t - 1);
      running += GapFunction(g, played, star);
      if (gi < grid.size() && t == grid[gi]) {
        out.push_back(MetricSample{t, "tracking_gap_avg", running / t, seed});
        ++gi;
      }
    }
  }
  if (wants("social_welfare") && !ctx.time_varying) {
    AppendSocialWelfareSeries(&out, traj, ctx.game, per_decade);
  }
  if (wants("regret") && !ctx.time_varying && ctx.game.has_gradients() &&
      config.algorithm != "entropy_omd" && config.algorithm != "optimistic_ew") {
    for (int i = 0; i < ctx.game.num_players(); ++i) {
      const auto series = IndividualRegret(
          traj, ctx.game, i, kRegretComparatorResolution, per_decade);
      out.insert(out.end(), series.begin(), series.end());
    }
  }
  for (auto& s : out) s.seed = seed;
  return out;
}

void WriteTrajectoryCsv(const std::string& path,
                        const std::vector<MetricSample>& samples,
                        const std::string& config_hash, uint64_t seed,
                        const std::vector<std::string>& extra_comments) {
  std::ofstream outfile(path, std::ios::binary);
  if (!outfile) throw std::runtime_error("cannot open for write: " + path);
  outfile << "# config_hash=" << config_hash << "\n";
  outfile << "# seed=" << seed << "\n";
  for (const auto& line : extra_comments) outfile << line << "\n";
  outfile << "t,metric,value\n";
  char buf[64];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g", s.value);
    outfile << s.t << "," << s.name << "," << buf << "\n";
  }
}

std::vector<MetricSample> ReadTrajectoryCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<MetricSample> out;
  std::string line;
  uint64_t seed = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("seed=");
      if (pos != std::string::npos) seed = std::stoull(line.substr(pos + 5));
      continue;
    }
    if (line.rfind("t,", 0) == 0) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) continue;
    MetricSample s;
    s.t = std::stol(line.substr(0, c1));
    s.name = line.substr(c1 + 1, c2 - c1 - 1);
    s.value = std::stod(line.substr(c2 + 1));
    s.seed = seed;
    out.push_back(std::move(s));
  }
  return out;
}

bool RunManifest::AllOk() const {
  for (const auto& r : runs) {
    if (r.status != "ok" && r.status != "cached") return false;
  }
  return !runs.empty();
}

namespace {

json ManifestToJson(const RunManifest& m) {
  json j;
  j["config_hash"] = m.config_hash;
  j["library_version"] = m.library_version;
  j["runs"] = json::array();
  for (const auto& r : m.runs) {
    j["runs"].push_back({{"seed", r.seed},
                         {"path", r.path},
                         {"status", r.status},
                         {"wall_clock_seconds", r.wall_clock_seconds}});
  }
  return j;
}

RunManifest ManifestFromJson(const json& j, const std::string& path) {
  RunManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.library_version = j.value("library_version", std::string());
  for (const auto& r : j.at("runs")) {
    m.runs.push_back({r.at("seed").get<uint64_t>(),
                      r.at("path").get<std::string>(),
                      r.at("status").get<std::string>(),
                      r.value("wall_clock_seconds", 0.0)});
  }
  m.path = path;
  return m;
}

}  // namespace

RunManifest ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("manifest not found: " + path);
  json j;
  in >> j;
  return ManifestFromJson(j, path);
}

RunManifest Execute(const RunConfig& config, int parallelism, bool force) {
  if (parallelism < 1) parallelism = 1;
  std::string out_dir = config.out_dir;
  if (out_dir.empty()) {
    const char* root = std::getenv(kOutputRootEnvVar);
    out_dir = root ? std::string(root) : std::string("runs");
  }
  fs::create_directories(out_dir);
  const std::string hash = ConfigHash(config.raw);
  const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();

  // Idempotence: an unchanged config with intact outputs is a no-op.
  if (!force && fs::exists(manifest_path)) {
    try {
      RunManifest prior = ReadManifest(manifest_path);
      if (prior.config_hash == hash) {
        bool intact = prior.AllOk();
        for (const auto& r : prior.runs) {
          if (!fs::exists(r.path)) intact = false;
        }
        if (intact) {
          for (auto& r : prior.runs) r.status = "cached";
          return prior;
        }
      }
    } catch (const std::exception&) {
      // Unreadable manifest: fall through and regenerate.
    }
  }

  RunManifest manifest;
  manifest.config_hash = hash;
  manifest.library_version = kLibraryVersion;
  manifest.runs.resize(config.seeds.size());

  std::atomic<size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= config.seeds.size()) return;
      const uint64_t seed = config.seeds[idx];
      RunManifest::Entry entry;
      entry.seed = seed;
      entry.path = (fs::path(out_dir) /
                    ("trajectory_seed" + std::to_string(seed) + ".csv"))
                       .string();
      const auto start = std::chrono::steady_clock::now();
      try {
        const std::vector<MetricSample> samples = RunConfigSeed(config, seed);
        std::vector<std::string> comments;
        for (const auto& s : samples) {
          if (s.name.rfind("regret_", 0) == 0) {
            comments.push_back("# regret_comparator_resolution=" +
                               std::to_string(kRegretComparatorResolution));
            break;
          }
        }
        WriteTrajectoryCsv(entry.path, samples, hash, seed, comments);
        entry.status = "ok";
      } catch (const std::exception& e) {
        entry.status = std::string("failed: ") + e.what();
      }
      entry.wall_clock_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      std::lock_guard<std::mutex> lock(mu);
      manifest.runs[idx] = std::move(entry);
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min<int>(parallelism, static_cast<int>(config.seeds.size()));
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // Manifest written last, atomically.
  const std::string tmp = manifest_path + ".tmp";
  {
    std::ofstream outfile(tmp, std::ios::binary);
    outfile << ManifestToJson(manifest).dump(2) << "\n";
  }
  fs::rename(tmp, manifest_path);
  manifest.path = manifest_path;
  return manifest;
}

SummaryReport Summarize(const RunManifest& manifest) {
  SummaryReport report;
  report.config_hash = manifest.config_hash;
  report.complete = manifest.AllOk();
  // (metric, t) -> values across seeds
  std::map<std::pair<std::string, long>, std::vector<double>> cells;
  long horizon = 0;
  for (const auto& run : manifest.runs) {
    if (run.status != "ok" && run.status != "cached") continue;
    for (const auto& s : ReadTrajectoryCsv(run.path)) {
      cells[{s.name, s.t}].push_back(s.value);
      horizon = std::max(horizon, s.t);
    }
  }
  std::map<std::string, std::vector<std::pair<double, double>>> log_points;
  for (auto& [key, values] : cells) {
    SummaryRow row;
    row.metric = key.first;
    row.t = key.second;
    row.count = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean = sum / values.size();
    std::sort(values.begin(), values.end());
    const size_t mid = values.size() / 2;
    row.median = values.size() % 2 == 1
                     ? values[mid]
                     : 0.5 * (values[mid - 1] + values[mid]);
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean) * (v - row.mean);
      row.stddev = std::sqrt(ss / (values.size() - 1));
    }
    report.rows.push_back(row);
    // Final-decade slope input: mean series in the log domain.
    if (row.t >= horizon / 10 && row.mean > 0) {
      log_points[row.metric].emplace_back(
          std::log(static_cast<double>(row.t)), std::log(row.mean));
    }
  }
  for (const auto& [metric, points] : log_points) {
    if (points.size() >= 2) {
      report.slopes[metric] = FitRate(points);
    }
  }
  return report;
}

std::string SummaryReport::ToCsv() const {
  std::ostringstream os;
  os << "# config_hash=" << config_hash << "\n";
  os << "metric,t,mean,median,std,count\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.metric << "," << r.t << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.mean);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.median);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.stddev);
    os << buf << "," << r.count << "\n";
  }
  return os.str();
}

std::string SummaryReport::ToText() const {
  std::ostringstream os;
  if (!complete) os << "WARNING: partial report, some runs failed\n";
  // Final value per metric.
  std::map<std::string, SummaryRow> last;
  for (const auto& r : rows) {
    auto it = last.find(r.metric);
    if (it == last.end() || r.t > it->second.t) last[r.metric] = r;
  }
  os << "metric                     final t      mean          median        std           slope\n";
  for (const auto& [metric, r] : last) {
    char line[256];
    const auto slope_it = slopes.find(metric);
    if (slope_it != slopes.end()) {
      std::snprintf(line, sizeof(line), "%-26s %-12ld %-13.6g %-13.6g %-13.6g %-8.3f\n",
                    metric.c_str(), r.t, r.mean, r.median, r.stddev,
                    slope_it->second);
    } else {
      std::snprintf(line, sizeof(line), "%-26s %-12ld %-13.6g %-13.6g %-13.6g %-8s\n",
                    metric.c_str(), r.t, r.mean, r.median, r.stddev, "n/a");
    }
    os << line;
  }
  return os.str();
}

std::vector<std::string> ListGames() {
  return {"cournot", "matrix_zero_sum", "matrix_monotone"};
}

std::vector<std::string> ListAlgorithms() {
  return {"bandit_md",   "linear_tau",  "entropy_omd", "optimistic_ew",
          "gd_projected", "omd_entropy", "tracking",    "converging"};
}

std::string CertifyGame(const std::string& name) {
  std::ostringstream os;
  Rng rng(2024);
  if (name == "cournot" || name == "cournot_all_active") {
    const CournotParams p = name == "cournot" ? DefaultCournotParams()
                                              : AllActiveCournotParams();
    const Game game = MakeCournot(p, /*normalize=*/true);
    os << "game: " << name << " (normalized, span=" << game.cost_span()
       << ")\n";
    os << "monotonicity sample-minimum (1e4 pairs): "
       << CheckMonotonicity(game, 10000, rng) << "\n";
    os << "kappa (quadratic regularizer): " << game.kappa() << "\n";
    // Convexity sweep of c_i - kappa p along own action at random profiles.
    double min_gap = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 2000; ++s) {
      StrategyProfile x;
      for (int i = 0; i < game.num_players(); ++i) {
        x.points.push_back(game.action_set(i).Sample(rng));
      }
      for (int i = 0; i < game.num_players(); ++i) {
        StrategyProfile y = x;
        y.points[i] = game.action_set(i).Sample(rng);
        const double lhs = (EvaluateGradient(game, i, y) -
                            EvaluateGradient(game, i, x))
                               .dot(y.points[i] - x.points[i]);
        const double quad =
            game.kappa() * (y.points[i] - x.points[i]).squaredNorm();
        min_gap = std::min(min_gap, lhs - quad);
      }
    }
    os << "kappa-convexity sweep min margin: " << min_gap << "\n";
    os << "smoothness l_i: ";
    for (int i = 0; i < game.num_players(); ++i) os << game.smoothness(i) << " ";
    os << "\n";
    const StrategyProfile nash = CournotNash(p);
    os << "nash: ";
    for (const auto& v : nash.points) os << v[0] << " ";
    os << "\n";
    return os.str();
  }
  if (name == "matrix_zero_sum" || name == "matrix_monotone") {
    MatrixGameSpec spec;
    spec.payoff = (MatrixXd(2, 2) << 1, 2, 3, 4).finished();
    spec.quadratic_weight = name == "matrix_monotone" ? 1.0 : 0.0;
    const Game game = MakeMatrixGame(spec);
    os << "game: " << name << " (A = [[1,2],[3,4]])\n";
    os << "monotonicity sample-minimum (1e4 pairs): "
       << CheckMonotonicity(game, 10000, rng) << "\n";
    os << "kappa: " << game.kappa() << "\n";
    os << "linear costs: " << (game.linear_costs() ? "yes" : "no") << "\n";
    const MatrixEquilibrium eq = SolveMatrixGame(spec.payoff);
    os << "equilibrium value: " << eq.value << "\n";
    return os.str();
  }
  throw std::invalid_argument("unknown game: " + name);
}

}  // namespace gamelab
