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
#include "evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "branches.hpp"
#include "error.hpp"
#include "tolerances.hpp"

namespace mousetrap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_amplitude(const Waveform& w, const TimeGrid& grid) {
  double peak = 0.0;
  for (long n = 0; n <= grid.steps; ++n) {
    peak = std::max(peak, std::abs(w.evaluate(grid.node(n))));
    if (n < grid.steps) peak = std::max(peak, std::abs(w.evaluate(grid.midpoint(n))));
  }
  return peak;
}

ComplexVector diag_phase_apply(const ComplexMatrix& left, const std::vector<double>& phases,
                               const ComplexMatrix& right, const ComplexVector& v) {
  // left * diag(exp(-i phases)) * right^+ * v
  const ComplexMatrix ra = right.adjoint();
  ComplexVector c = ra * std::span<const Complex>(v);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -phases[j]);
  return left * std::span<const Complex>(c);
}

ComplexMatrix diag_phase_sandwich(const ComplexMatrix& left, const std::vector<double>& phases,
                                  const ComplexMatrix& right) {
  const std::size_t n = phases.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k)
        acc += left(i, k) * std::polar(1.0, -phases[k]) * std::conj(right(j, k));
      out(i, j) = acc;
    }
  return out;
}

void require_unitary(const ComplexMatrix& u, const char* what) {
  const double defect = unitarity_defect(u);
  if (!(defect < tol::kPropagatedUnitary)) {
    std::ostringstream os;
    os << what << " lost unitarity (defect " << defect << ")";
    fail_numerical(os.str());
  }
}

std::array<double, 3> reference_direction(const SensorModel& model) {
  std::array<double, 3> d{};
  d[static_cast<int>(model.reference_axis())] = 1.0;
  return d;
}

}  // namespace

double TimeGrid::node(long n) const {
  if (n == steps) return t1;
  return t0 + static_cast<double>(n) * dt();
}

TimeGrid make_grid(const Window& window, long steps) {
  if (steps < 1) fail_validation("grid.steps must be at least 1");
  if (!(window.t0 < window.t1)) fail_validation("time window must satisfy t0 < t1");
  return TimeGrid{window.t0, window.t1, steps};
}

ComplexMatrix propagate_numeric(const SensorModel& model, const Waveform& w,
                                const TimeGrid& grid) {
  const std::size_t n = model.dim();
  ComplexMatrix u = ComplexMatrix::identity(n);
  ComplexMatrix h(n);
  const double dt = grid.dt();
  for (long step = 0; step < grid.steps; ++step) {
    model.hamiltonian_into(w.evaluate(grid.midpoint(step)), w.direction(), h);
    u = expm_unitary(h, dt) * u;
  }
  require_unitary(u, "numeric propagator");
  return u;
}

ComplexVector propagate_state(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                              ComplexVector state) {
  if (state.size() != model.dim()) fail_validation("initial state dimension does not match model");
  ComplexMatrix h(model.dim());
  const double dt = grid.dt();
  for (long step = 0; step < grid.steps; ++step) {
    model.hamiltonian_into(w.evaluate(grid.midpoint(step)), w.direction(), h);
    apply_expm(h, dt, state);
  }
  return state;
}

std::optional<double> reference_orientation(const SensorModel& model, const Waveform& w) {
  const auto& d = w.direction();
  const int axis = static_cast<int>(model.reference_axis());
  for (int i = 0; i < 3; ++i)
    if (i != axis && std::abs(d[i]) > 1e-12) return std::nullopt;
  if (std::abs(std::abs(d[axis]) - 1.0) > 1e-12) return std::nullopt;
  return d[axis] > 0 ? 1.0 : -1.0;
}

EvolutionResult evolve(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                       EigenPair pair, long checkpoint_every) {
  validate_pair(model.kind(), pair);
  if (checkpoint_every < 1) fail_validation("grid.checkpoint must be at least 1");
  const std::size_t n = model.dim();
  const double dt = grid.dt();
  const ComplexVector phi0 = ramsey_input_state(model.kind(), pair);
  const ComplexMatrix& psi0_basis = reference_basis(model.kind());

  EvolutionResult out;
  out.grid = grid;
  const auto orientation = reference_orientation(model, w);
  out.adiabatic_available = orientation.has_value();
  std::shared_ptr<const BranchTable> table;
  if (orientation) table = branch_table(model.kind(), max_amplitude(w, grid) + 0.1);
  const double sign = orientation.value_or(1.0);
  const std::array<double, 3> ref_dir = reference_direction(model);

  ComplexMatrix u = ComplexMatrix::identity(n);
  ComplexMatrix h(n);
  std::vector<double> phase(n, 0.0);
  std::vector<double> node_values;
  ComplexMatrix start_vectors;

  auto labelled = [&](double t, bool vectors) {
    const double b = sign * w.evaluate(t);
    model.hamiltonian_into(b, ref_dir, h);
    return table->label(b, hermitian_eig(h), vectors);
  };

  auto checkpoint = [&](double t, const ComplexMatrix* vectors) {
    out.times.push_back(t);
    out.field.push_back(w.evaluate(t));
    const ComplexVector numeric = u * std::span<const Complex>(phi0);
    out.survival_numeric.push_back(std::min(1.0, std::norm(inner(phi0, numeric))));
    if (!table) {
      out.survival_adiabatic.push_back(kNaN);
      out.delta.push_back(kNaN);
      out.accumulated_phase.push_back(kNaN);
      return;
    }
    const ComplexVector ideal = diag_phase_apply(psi0_basis, phase, psi0_basis, phi0);
    out.survival_adiabatic.push_back(std::min(1.0, std::norm(inner(phi0, ideal))));
    const ComplexVector adiabatic = diag_phase_apply(*vectors, phase, start_vectors, phi0);
    out.delta.push_back(std::clamp(1.0 - std::norm(inner(numeric, adiabatic)), 0.0, 1.0));
    out.accumulated_phase.push_back(0.5 * (phase[pair.p - 1] - phase[pair.q - 1]));
  };

  if (table) {
    auto start = labelled(grid.t0, true);
    node_values = std::move(start.eigenvalues);
    start_vectors = std::move(start.eigenvectors);
  }
  checkpoint(grid.t0, &start_vectors);

  ComplexMatrix last_vectors;
  for (long step = 0; step < grid.steps; ++step) {
    const double tm = grid.midpoint(step);
    model.hamiltonian_into(w.evaluate(tm), w.direction(), h);
    HermitianEig mid = hermitian_eig(h);
    u = expm_unitary(mid, dt) * u;

    const bool is_checkpoint = (step + 1) % checkpoint_every == 0 || step + 1 == grid.steps;
    if (table) {
      // The midpoint decomposition is reused when the field already lies on the
      // reference axis with positive sign.
      const double bm = sign * w.evaluate(tm);
      const auto mid_values =
          sign > 0 ? table->label(bm, mid, false).eigenvalues : labelled(tm, false).eigenvalues;
      auto next = labelled(grid.node(step + 1), is_checkpoint);
      for (std::size_t j = 0; j < n; ++j)
        phase[j] += dt / 6.0 * (node_values[j] + 4.0 * mid_values[j] + next.eigenvalues[j]);
      node_values = std::move(next.eigenvalues);
      if (is_checkpoint) last_vectors = std::move(next.eigenvectors);
    }
    if (is_checkpoint) checkpoint(grid.node(step + 1), &last_vectors);
  }

  require_unitary(u, "numeric propagator");
  out.unitary_numeric = std::move(u);
  if (table) {
    out.level_phases = phase;
    out.unitary_adiabatic = diag_phase_sandwich(last_vectors, phase, start_vectors);
    require_unitary(out.unitary_adiabatic, "adiabatic propagator");
  }
  return out;
}

namespace {

EvolutionResult adiabatic_only(const SensorModel& model, const Waveform& w, const TimeGrid& grid) {
  if (!reference_orientation(model, w)) {
    std::ostringstream os;
    os << "adiabatic propagation needs the field along the " << sensor_kind_name(model.kind())
       << " reference axis";
    fail_validation(os.str());
  }
  const EigenPair pair = model.kind() == SensorKind::KitaevTrimer ? kMousetrapPair : EigenPair{2, 1};
  return evolve(model, w, grid, pair, grid.steps);
}

}  // namespace

ComplexMatrix propagate_adiabatic(const SensorModel& model, const Waveform& w,
                                  const TimeGrid& grid) {
  return adiabatic_only(model, w, grid).unitary_adiabatic;
}

std::vector<double> adiabatic_phases(const SensorModel& model, const Waveform& w,
                                     const TimeGrid& grid) {
  return adiabatic_only(model, w, grid).level_phases;
}

double adiabatic_delta(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                       const ComplexVector& initial_state) {
  if (initial_state.size() != model.dim()) fail_validation("initial state dimension does not match model");
  if (std::abs(norm(initial_state) - 1.0) > tol::kNormalized)
    fail_validation("initial state must be normalized");
  const EvolutionResult r = adiabatic_only(model, w, grid);
  const ComplexVector a = r.unitary_numeric * std::span<const Complex>(initial_state);
  const ComplexVector b = r.unitary_adiabatic * std::span<const Complex>(initial_state);
  return std::clamp(1.0 - std::norm(inner(a, b)), 0.0, 1.0);
}

GapPolicy::Aggregation parse_gap_aggregation(const std::string& text) {
  if (text == "global") return GapPolicy::Aggregation::GlobalMin;
  if (text == "pointwise") return GapPolicy::Aggregation::Pointwise;
  fail_validation("bound.gap-policy: expected 'global' or 'pointwise', got '" + text + "'");
}

GapPolicy::Levels parse_gap_levels(const std::string& text) {
  if (text == "all") return GapPolicy::Levels::All;
  if (text == "coupled") return GapPolicy::Levels::Coupled;
  fail_validation("bound.gap-levels: expected 'all' or 'coupled', got '" + text + "'");
}

std::string gap_aggregation_name(GapPolicy::Aggregation a) {
  return a == GapPolicy::Aggregation::GlobalMin ? "global" : "pointwise";
}

std::string gap_levels_name(GapPolicy::Levels l) {
  return l == GapPolicy::Levels::All ? "all" : "coupled";
}

BoundReport adiabatic_bound(const SensorModel& model, const Waveform& w, const TimeGrid& grid,
                            EigenPair pair, const GapPolicy& policy) {
  validate_pair(model.kind(), pair);
  const auto orientation = reference_orientation(model, w);
  if (!orientation) fail_validation("the adiabatic bound needs the field along the reference axis");
  if (!(policy.threshold >= 0.0)) fail_validation("bound.gap-threshold must be non-negative");
  if (!(policy.floor > 0.0)) fail_validation("bound.gap-floor must be positive");

  const std::array<double, 3> ref_dir = reference_direction(model);
  const ComplexMatrix h1 = model.coupling_along(ref_dir);
  const HermitianEig h1_eig = hermitian_eig(h1);
  const double coupling_norm =
      std::max(std::abs(h1_eig.eigenvalues.front()), std::abs(h1_eig.eigenvalues.back()));
  const double period = grid.t1 - grid.t0;
  const auto table = branch_table(model.kind(), max_amplitude(w, grid) + 0.1);
  const bool coupled = policy.levels == GapPolicy::Levels::Coupled;

  struct Point {
    double t, first, second, gap;
  };
  std::vector<Point> points;
  for (long k = 0; k <= grid.steps; ++k) {
    const double t = grid.node(k);
    const double b = *orientation * w.evaluate(t);
    if (std::abs(b) <= policy.threshold) continue;
    const auto sample = table->at(b, coupled);
    double gap = std::numeric_limits<double>::infinity();
    for (const int tracked : {pair.p - 1, pair.q - 1}) {
      const ComplexVector vt = coupled ? sample.eigenvectors.column(tracked) : ComplexVector{};
      for (std::size_t j = 0; j < sample.eigenvalues.size(); ++j) {
        if (static_cast<int>(j) == tracked) continue;
        if (coupled) {
          const ComplexVector vj = sample.eigenvectors.column(j);
          const ComplexVector hv = h1 * std::span<const Complex>(vt);
          if (std::abs(inner(vj, hv)) <= 1e-8) continue;
        }
        gap = std::min(gap, std::abs(sample.eigenvalues[tracked] - sample.eigenvalues[j]));
      }
    }
    if (!(gap >= policy.floor)) {
      std::ostringstream os;
      os << "spectral gap " << gap << " at t = " << t << " (b = " << b
         << ") is below bound.gap-floor " << policy.floor << "; a level crossing dominates";
      fail_numerical(os.str());
    }
    const double d1 = std::abs(w.derivative(t, 1)), d2 = std::abs(w.derivative(t, 2));
    points.push_back({t, std::pow(coupling_norm * period * d1, 3),
                      coupling_norm * coupling_norm * std::pow(period, 3) * d1 * d2, gap});
  }

  BoundReport report;
  report.coupling_norm = coupling_norm;
  if (points.empty()) return report;
  double global_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : points) global_gap = std::min(global_gap, p.gap);
  double best = -1.0;
  for (const auto& p : points) {
    const double g = policy.aggregation == GapPolicy::Aggregation::GlobalMin ? global_gap : p.gap;
    const double first = p.first / std::pow(g, 4), second = p.second / std::pow(g, 3);
    report.first_term = std::max(report.first_term, first);
    report.second_term = std::max(report.second_term, second);
    const double value = std::max(first, second);
    if (value > best) {
      best = value;
      report.gap = g;
      report.time_of_max = p.t;
    }
  }
  report.delta_sq_bound = 1e5 / period * best;
  report.first_term *= 1e5 / period;
  report.second_term *= 1e5 / period;
  return report;
}

Refinement refine_until_converged(const SensorModel& model, const Waveform& w,
                                  long initial_steps, const ComplexVector& state,
                                  double tolerance) {
  if (initial_steps < 16) fail_validation("grid.steps must be at least 16 for refinement");
  if (!(tolerance > 0.0)) fail_validation("refinement tolerance must be positive");
  auto survival = [&](long steps) {
    const ComplexVector end = propagate_state(model, w, make_grid(w.window(), steps), state);
    return std::norm(inner(state, end));
  };
  Refinement r;
  long steps = initial_steps;
  double coarse = survival(steps);
  while (true) {
    if (steps * 2 > tol::kRefinementMaxSteps) {
      std::ostringstream os;
      os << "grid refinement did not converge within " << tol::kRefinementMaxSteps
         << " steps (last survival change " << r.last_change << ")";
      fail_numerical(os.str());
    }
    const double fine = survival(steps * 2);
    r.last_change = std::abs(fine - coarse);
    if (r.last_change < tolerance) break;
    steps *= 2;
    ++r.doublings;
    coarse = fine;
  }
  r.grid = make_grid(w.window(), steps);
  r.survival = coarse;
  return r;
}

}  // namespace mousetrap
