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

#ifndef GAMELAB_SCHEDULE_H_
#define GAMELAB_SCHEDULE_H_

#include <optional>
#include <string>

namespace gamelab {

enum class SchedulePreset {
  kMonotoneMain,          // eta = 1/(2d t^{3/4}),        delta = t^{-1/4}
  kStronglyMonotoneMain,  // eta = 1/(2d t^{1/2}),        delta = 1
  kLinearTau,             // eta = 1/(2d t^{1/2}),        delta = 1, tau = T^{-1/6}
  kNoisy,                 // eta = 1/(4d^2(1+sigma)t^{3/4}), delta = t^{-1/4}
  kTracking,              // eta = 1/(2d t^{(1-phi)/3}),  delta = t^{-1/2}
  kExperiment,       // eta = 1/sqrt(t+1),           delta = 0.001
  kCustom,
};

std::string PresetName(SchedulePreset preset);
SchedulePreset PresetFromName(const std::string& name);

// The (eta_t, delta_t, kappa, tau, beta, rho) step/regularization policy.
// Presets pin the theorem schedules; every field can be overridden.
struct Schedule {
  SchedulePreset preset = SchedulePreset::kCustom;
  int dim = 1;        // d in the step-size formulas
  double sigma = 0.0;  // noisy preset
  double phi = 0.0;    // tracking preset
  long horizon = 0;    // linear_tau preset (tau depends on T)

  double kappa = 0.0;
  double tau = 0.0;
  double beta = 0.0;
  double rho = 1.0;

  std::optional<double> eta_override;    // constant eta
  std::optional<double> delta_override;  // constant delta

  double Eta(long t) const;
  double Delta(long t) const;
  // Human-readable fingerprint recorded on trajectories.
  std::string Fingerprint() const;

  static Schedule MonotoneMain(int dim, double kappa);
  static Schedule StronglyMonotoneMain(int dim, double kappa);
  static Schedule LinearTau(int dim, long horizon);
  static Schedule Noisy(int dim, double sigma, double kappa);
  static Schedule Tracking(int dim, double phi);
  static Schedule ExperimentPaper(double kappa);
  static Schedule Custom(double eta, double delta);
};

}  // namespace gamelab

#endif  // GAMELAB_SCHEDULE_H_
