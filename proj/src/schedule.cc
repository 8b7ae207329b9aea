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

#include "gamelab/schedule.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gamelab {

std::string PresetName(SchedulePreset preset) {
  switch (preset) {
    case SchedulePreset::kMonotoneMain: return "monotone_main";
    case SchedulePreset::kStronglyMonotoneMain: return "strongly_monotone_main";
    case SchedulePreset::kLinearTau: return "linear_tau";
    case SchedulePreset::kNoisy: return "noisy";
    case SchedulePreset::kTracking: return "tracking";
    case SchedulePreset::kExperiment: return "experiment";
    case SchedulePreset::kCustom: return "custom";
  }
  return "custom";
}

SchedulePreset PresetFromName(const std::string& name) {
  if (name == "monotone_main") return SchedulePreset::kMonotoneMain;
  if (name == "strongly_monotone_main") return SchedulePreset::kStronglyMonotoneMain;
  if (name == "linear_tau") return SchedulePreset::kLinearTau;
  if (name == "noisy") return SchedulePreset::kNoisy;
  if (name == "tracking") return SchedulePreset::kTracking;
  if (name == "experiment") return SchedulePreset::kExperiment;
  if (name == "custom") return SchedulePreset::kCustom;
  throw std::invalid_argument("unknown schedule preset: " + name);
}

double Schedule::Eta(long t) const {
  if (t < 1) throw std::invalid_argument("Schedule: t starts at 1");
  if (eta_override) return *eta_override;
  const double d = dim;
  switch (preset) {
    case SchedulePreset::kMonotoneMain:
      return 1.0 / (2.0 * d * std::pow(static_cast<double>(t), 0.75));
    case SchedulePreset::kStronglyMonotoneMain:
    case SchedulePreset::kLinearTau:
      return 1.0 / (2.0 * d * std::sqrt(static_cast<double>(t)));
    case SchedulePreset::kNoisy:
      return 1.0 / (4.0 * d * d * (1.0 + sigma) *
                    std::pow(static_cast<double>(t), 0.75));
    case SchedulePreset::kTracking:
      return 1.0 /
             (2.0 * d * std::pow(static_cast<double>(t), (1.0 - phi) / 3.0));
    case SchedulePreset::kExperiment:
      return 1.0 / std::sqrt(static_cast<double>(t + 1));
    case SchedulePreset::kCustom:
      throw std::logic_error("custom schedule requires an eta override");
  }
  throw std::logic_error("unreachable");
}

double Schedule::Delta(long t) const {
  if (t < 1) throw std::invalid_argument("Schedule: t starts at 1");
  if (delta_override) return *delta_override;
  switch (preset) {
    case SchedulePreset::kMonotoneMain:
    case SchedulePreset::kNoisy:
      return std::pow(static_cast<double>(t), -0.25);
    case SchedulePreset::kStronglyMonotoneMain:
    case SchedulePreset::kLinearTau:
      return 1.0;
    case SchedulePreset::kTracking:
      return std::pow(static_cast<double>(t), -0.5);
    case SchedulePreset::kExperiment:
      return 0.001;
    case SchedulePreset::kCustom:
      throw std::logic_error("custom schedule requires a delta override");
  }
  throw std::logic_error("unreachable");
}

std::string Schedule::Fingerprint() const {
  std::ostringstream os;
  os << PresetName(preset) << ";d=" << dim << ";kappa=" << kappa
     << ";tau=" << tau << ";beta=" << beta << ";rho=" << rho
     << ";sigma=" << sigma << ";phi=" << phi << ";T=" << horizon;
  if (eta_override) os << ";eta=" << *eta_override;
  if (delta_override) os << ";delta=" << *delta_override;
  return os.str();
}

Schedule Schedule::MonotoneMain(int dim, double kappa) {
  Schedule s;
  s.preset = SchedulePreset::kMonotoneMain;
  s.dim = dim;
  s.kappa = kappa;
  return s;
}

Schedule Schedule::StronglyMonotoneMain(int dim, double kappa) {
  Schedule s;
  s.preset = SchedulePreset::kStronglyMonotoneMain;
  s.dim = dim;
  s.kappa = kappa;
  return s;
}

Schedule Schedule::LinearTau(int dim, long horizon) {
  if (horizon < 1) throw std::invalid_argument("LinearTau: horizon must be >= 1");
  Schedule s;
  s.preset = SchedulePreset::kLinearTau;
  s.dim = dim;
  s.horizon = horizon;
  s.tau = std::pow(static_cast<double>(horizon), -1.0 / 6.0);
  return s;
}

Schedule Schedule::Noisy(int dim, double sigma, double kappa) {
  Schedule s;
  s.preset = SchedulePreset::kNoisy;
  s.dim = dim;
  s.sigma = sigma;
  s.kappa = kappa;
  return s;
}

Schedule Schedule::Tracking(int dim, double phi) {
  Schedule s;
  s.preset = SchedulePreset::kTracking;
  s.dim = dim;
  s.phi = phi;
  return s;
}

Schedule Schedule::ExperimentPaper(double kappa) {
  Schedule s;
  s.preset = SchedulePreset::kExperiment;
  s.kappa = kappa;
  return s;
}

Schedule Schedule::Custom(double eta, double delta) {
  Schedule s;
  s.preset = SchedulePreset::kCustom;
  s.eta_override = eta;
  s.delta_override = delta;
  return s;
}

}  // namespace gamelab
