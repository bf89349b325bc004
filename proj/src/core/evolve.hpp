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

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "model.hpp"
#include "signal.hpp"
#include "spectrum.hpp"

namespace mousetrap {

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  long steps = 1;

  double dt() const { return (t1 - t0) / static_cast<double>(steps); }
  double node(long n) const;
  double midpoint(long n) const { return node(n) + 0.5 * dt(); }
};

/// Validated grid over \p window.
TimeGrid make_grid(const Window& window, long steps);

/// U = prod_n exp(-i dt H(t_n + dt/2)), later steps on the left.
ComplexMatrix propagate_numeric(const SensorModel& model, const Waveform& w, const TimeGrid& grid);

/// The same midpoint product applied to a state, via apply_expm. Much cheaper than
/// propagate_numeric when only one state is needed.
ComplexVector propagate_state(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                              ComplexVector state);

/// Sign of the waveform along the model's reference axis, if it points along it.
std::optional<double> reference_orientation(const SensorModel& model, const Waveform& w);

/// Psi_t exp(-i Phi(t)) Psi_{t0}^+ with Phi_j = int l_j over the grid. Requires a field
/// along the model's reference axis (the labelled branches are tracked there).
ComplexMatrix propagate_adiabatic(const SensorModel& model, const Waveform& w,
                                  const TimeGrid& grid);

/// Integrated labelled eigenvalues Phi_j(t1), composite Simpson on node and midpoint samples.
std::vector<double> adiabatic_phases(const SensorModel& model, const Waveform& w,
                                     const TimeGrid& grid);

/// 1 - |<U_num psi | U_ad psi>|^2 at the end of the grid.
double adiabatic_delta(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                       const ComplexVector& initial_state);

struct EvolutionResult {
  TimeGrid grid;
  bool adiabatic_available = false;
  ComplexMatrix unitary_numeric;
  ComplexMatrix unitary_adiabatic;         ///< empty when !adiabatic_available
  std::vector<double> level_phases;        ///< Phi_j(t1)
  std::vector<double> times;               ///< checkpoint times, t0 first
  std::vector<double> field;               ///< b(t) at checkpoints
  std::vector<double> survival_numeric;
  std::vector<double> survival_adiabatic;  ///< |<phi0| Psi0 e^{-i Phi} Psi0^+ |phi0>|^2
  std::vector<double> delta;
  std::vector<double> accumulated_phase;   ///< (Phi_p - Phi_q) / 2
};

/// Numeric and adiabatic propagation side by side, sampled every \p checkpoint_every steps
/// (and always at both ends). Adiabatic columns are NaN when the field is off-axis.
EvolutionResult evolve(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                       EigenPair pair, long checkpoint_every);

struct GapPolicy {
  enum class Aggregation { GlobalMin, Pointwise };
  enum class Levels { All, Coupled };

  double threshold = 0.05;  ///< only |b| above this enters
  Aggregation aggregation = Aggregation::GlobalMin;
  Levels levels = Levels::All;
  double floor = 1e-9;      ///< a gap below this is rejected
};

GapPolicy::Aggregation parse_gap_aggregation(const std::string& text);
GapPolicy::Levels parse_gap_levels(const std::string& text);
std::string gap_aggregation_name(GapPolicy::Aggregation a);
std::string gap_levels_name(GapPolicy::Levels l);

struct BoundReport {
  double delta_sq_bound = 0.0;
  double first_term = 0.0;   ///< (1e5/T) max_t (|H1| T |b'|)^3 / gamma^4
  double second_term = 0.0;  ///< (1e5/T) max_t |H1|^2 T^3 |b' b''| / gamma^3
  double gap = 0.0;         ///< gap used where the max was attained (0 when no point qualified)
  double time_of_max = 0.0;
  double coupling_norm = 0.0;
};

/// Lower bound on delta^2:
///   (1e5 / T) max_t { (|H1| T |b'|)^3 / gamma^4, |H1|^2 T^3 |b' b''| / gamma^3 }
/// with T the window length and gamma from \p policy over the pair's labelled levels.
BoundReport adiabatic_bound(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                            EigenPair pair, const GapPolicy& policy);

struct Refinement {
  TimeGrid grid;
  double last_change = 0.0;
  int doublings = 0;
  double survival = 0.0;
};

/// Doubles the step count from \p initial_steps until the final survival of \p state
/// changes by less than \p tolerance between refinements.
Refinement refine_until_converged(const SensorModel& model, const Waveform& w,
                                  long initial_steps, const ComplexVector& state,
                                  double tolerance);

}  // namespace mousetrap
