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
#include "scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "branches.hpp"
#include "error.hpp"
#include "sensing.hpp"
#include "tolerances.hpp"

namespace mousetrap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_grid(const ScanSpec& spec) {
  if (spec.epsilons.empty()) fail_validation("scan: the epsilon grid is empty");
  for (double e : spec.epsilons)
    if (!std::isfinite(e)) fail_validation("scan: epsilon values must be finite");
  if (spec.threads < 1) fail_validation("scan.threads must be at least 1");
  validate_pair(spec.model, spec.pair);
}

double worst_epsilon(const ScanSpec& spec) {
  double worst = 0.0;
  for (double e : spec.epsilons)
    if (std::abs(e) > std::abs(worst)) worst = e;
  return worst;
}

// Refines once per scan. The largest amplitude is not always the slowest to converge
// (its survival can sit near zero), so the probes are the largest amplitude and two
// fractions of it; the most demanding step count is kept.
TimeGrid converged_grid(const ScanSpec& spec, const Waveform& probe_axis, long multiple_of,
                        ScanResult& out) {
  long initial = std::max<long>(spec.initial_steps, 16);
  initial = (initial + multiple_of - 1) / multiple_of * multiple_of;
  TimeGrid grid = make_grid(probe_axis.window(), initial);
  if (!spec.refine) {
    out.add_meta("refinement", "off");
    out.add_meta("steps", std::to_string(grid.steps));
    return grid;
  }
  const SensorModel model(spec.model);
  const ComplexVector phi0 = ramsey_input_state(spec.model, spec.pair);
  const double worst = worst_epsilon(spec);
  std::string probes;
  double last_change = 0.0;
  for (const double fraction : {1.0, 2.0 / 3.0, 1.0 / 3.0}) {
    const Refinement r = refine_until_converged(model, probe_axis.scaled(worst * fraction),
                                                initial, phi0, tol::kRefinement);
    if (r.grid.steps >= grid.steps) {
      grid = r.grid;
      last_change = r.last_change;
    }
    probes += (probes.empty() ? "" : ",") + format_number(worst * fraction);
  }
  out.add_meta("refinement", "converged");
  out.add_meta("refinement_epsilons", probes);
  out.add_meta("refinement_last_change", format_number(last_change));
  out.add_meta("steps", std::to_string(grid.steps));
  return grid;
}

void common_meta(const ScanSpec& spec, const std::string& kind, ScanResult& out) {
  out.add_meta("scan", kind);
  out.add_meta("version", MOUSETRAP_VERSION);
  for (const auto& kv : spec.echo) out.metadata.push_back(kv);
}

// Prebuilds the shared branch table so workers only read it.
void warm_branches(const ScanSpec& spec) {
  double peak = 0.0;
  const Waveform w = spec.unit_waveform.scaled(std::abs(worst_epsilon(spec)));
  const Window win = w.window();
  for (int i = 0; i <= 4096; ++i) peak = std::max(peak, std::abs(w.evaluate(win.t0 + win.length() * i / 4096.0)));
  branch_table(spec.model, peak + 0.1);
}

}  // namespace

std::vector<double> linspace(double first, double last, int count) {
  if (count < 1) fail_validation("grid point count must be at least 1");
  if (count == 1) return {first};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = i + 1 == count ? last : first + (last - first) * i / (count - 1);
  return out;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ScanResult amplitude_sweep(const ScanSpec& spec) {
  require_grid(spec);
  ScanResult out;
  common_meta(spec, "amplitude_sweep", out);
  warm_branches(spec);
  const TimeGrid grid = converged_grid(spec, spec.unit_waveform, 1, out);
  const SensorModel model(spec.model);
  const ComplexVector phi0 = ramsey_input_state(spec.model, spec.pair);

  out.columns = {"epsilon", "chi", "p_n1", "p_n3_ps", "p_n3_es", "p_numeric"};
  out.rows.assign(spec.epsilons.size(), {});
  parallel_for(spec.epsilons.size(), spec.threads, [&](std::size_t i) {
    const double eps = spec.epsilons[i];
    const Waveform w = spec.unit_waveform.scaled(eps);
    const double chi = chi_exact(spec.model, spec.pair, w);
    const ComplexVector end = propagate_state(model, w, grid, phi0);
    out.rows[i] = {eps,
                   chi,
                   multi_sensor_probability(chi, 1, InputMode::ProductState),
                   multi_sensor_probability(chi, 3, InputMode::ProductState),
                   multi_sensor_probability(chi, 3, InputMode::EntangledGHZ),
                   std::min(1.0, std::norm(inner(phi0, end)))};
  });
  return out;
}

ScanResult time_resolved(const ScanSpec& spec) {
  require_grid(spec);
  if (spec.time_points < 2) fail_validation("scan.time-points must be at least 2");
  ScanResult out;
  common_meta(spec, "time_resolved", out);
  warm_branches(spec);
  const long intervals = spec.time_points - 1;
  const TimeGrid grid =
      converged_grid(spec, spec.unit_waveform, intervals, out);
  const SensorModel model(spec.model);

  out.columns = {"t", "epsilon", "b_of_t", "chi", "p_n1", "p_numeric"};
  std::vector<std::vector<std::vector<double>>> blocks(spec.epsilons.size());
  parallel_for(spec.epsilons.size(), spec.threads, [&](std::size_t i) {
    const double eps = spec.epsilons[i];
    const EvolutionResult r =
        evolve(model, spec.unit_waveform.scaled(eps), grid, spec.pair, grid.steps / intervals);
    for (std::size_t c = 0; c < r.times.size(); ++c)
      blocks[i].push_back({r.times[c], eps, r.field[c], r.accumulated_phase[c],
                           r.survival_adiabatic[c], r.survival_numeric[c]});
  });
  for (auto& block : blocks)
    for (auto& row : block) out.rows.push_back(std::move(row));
  return out;
}

ScanResult directional_octant(const ScanSpec& spec) {
  require_grid(spec);
  if (spec.model != SensorKind::KitaevTrimer)
    fail_validation("model.model: directional scans need the trimer (the only model coupled on all axes)");
  ScanResult out;
  common_meta(spec, "directional_octant", out);
  warm_branches(spec);
  // Refined along the reference axis at the largest amplitude.
  const TimeGrid grid = converged_grid(spec, spec.unit_waveform.with_direction(kAxisZ), 1, out);
  out.add_meta("initial_state", "z-axis eigenpair");
  const SensorModel model(spec.model);
  const ComplexVector phi0 = ramsey_input_state(spec.model, spec.pair);
  const auto thetas = linspace(0.0, std::numbers::pi / 2, spec.theta_points);
  const auto phis = linspace(0.0, std::numbers::pi / 2, spec.phi_points);

  out.columns = {"epsilon", "theta", "phi", "p_numeric", "p_n1"};
  const std::size_t per_eps = thetas.size() * phis.size();
  out.rows.assign(spec.epsilons.size() * per_eps, {});
  parallel_for(out.rows.size(), spec.threads, [&](std::size_t idx) {
    const std::size_t e = idx / per_eps, rest = idx % per_eps;
    const double theta = thetas[rest / phis.size()], phi = phis[rest % phis.size()];
    const double eps = spec.epsilons[e];
    std::array<double, 3> dir{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                              std::cos(theta)};
    const double len = std::hypot(dir[0], dir[1], dir[2]);
    for (double& d : dir) d /= len;
    const Waveform w = spec.unit_waveform.scaled(eps).with_direction(dir);
    const ComplexVector end = propagate_state(model, w, grid, phi0);
    double closed = kNaN;
    if (reference_orientation(model, w)) closed = ramsey_probability(chi_exact(spec.model, spec.pair, w));
    out.rows[idx] = {eps, theta, phi, std::min(1.0, std::norm(inner(phi0, end))), closed};
  });
  return out;
}

ScanResult adiabatic_error_sweep(const ScanSpec& spec) {
  require_grid(spec);
  ScanResult out;
  common_meta(spec, "adiabatic_error_sweep", out);
  warm_branches(spec);
  const TimeGrid grid = converged_grid(spec, spec.unit_waveform, 1, out);
  out.add_meta("gap_policy", gap_aggregation_name(spec.gap.aggregation));
  out.add_meta("gap_levels", gap_levels_name(spec.gap.levels));
  out.add_meta("gap_threshold", format_number(spec.gap.threshold));
  out.add_meta("gap_floor", format_number(spec.gap.floor));
  const SensorModel model(spec.model);

  out.columns = {"epsilon", "delta", "delta_sq_bound"};
  out.rows.assign(spec.epsilons.size(), {});
  parallel_for(spec.epsilons.size(), spec.threads, [&](std::size_t i) {
    const double eps = spec.epsilons[i];
    const Waveform w = spec.unit_waveform.scaled(eps);
    const EvolutionResult r = evolve(model, w, grid, spec.pair, grid.steps);
    const BoundReport bound = adiabatic_bound(model, w, grid, spec.pair, spec.gap);
    out.rows[i] = {eps, r.delta.back(), bound.delta_sq_bound};
  });
  return out;
}

}  // namespace mousetrap
