// Copyright 2026 The Mousetrap Authors
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
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "evolve.hpp"
#include "model.hpp"
#include "signal.hpp"
#include "spectrum.hpp"
#include "table.hpp"

namespace mousetrap {

struct ScanSpec {
  SensorKind model = SensorKind::KitaevTrimer;
  EigenPair pair = kMousetrapPair;
  /// Signal at unit amplitude; each scan point multiplies it by epsilon.
  Waveform unit_waveform = preset_waveform("fig2", 1.0);
  std::vector<double> epsilons;
  int theta_points = 31;
  int phi_points = 31;
  int time_points = 301;
  long initial_steps = 512;
  bool refine = true;
  int threads = 1;
  GapPolicy gap;
  /// Echoed into the output metadata.
  std::vector<std::pair<std::string, std::string>> echo;
};

std::vector<double> linspace(double first, double last, int count);

/// Runs body(i) for i in [0, count) on \p threads workers. Results must be stored by index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// epsilon, chi, p_n1, p_n3_ps, p_n3_es, p_numeric
ScanResult amplitude_sweep(const ScanSpec& spec);
/// t, epsilon, b_of_t, chi, p_n1, p_numeric for every (epsilon, t)
ScanResult time_resolved(const ScanSpec& spec);
/// epsilon, theta, phi, p_numeric, p_n1 (p_n1 only on the reference axis)
ScanResult directional_octant(const ScanSpec& spec);
/// epsilon, delta, delta_sq_bound
ScanResult adiabatic_error_sweep(const ScanSpec& spec);

}  // namespace mousetrap
