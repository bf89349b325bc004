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
#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "error.hpp"
#include "evolve.hpp"
#include "scan.hpp"
#include "sensing.hpp"
#include "spectrum.hpp"

namespace mousetrap {

namespace {

ScanSpec scan_spec(const RunConfig& rc) {
  ScanSpec spec;
  spec.model = rc.model;
  spec.pair = rc.pair;
  spec.unit_waveform = rc.unit_waveform;
  spec.epsilons = rc.epsilons;
  spec.theta_points = rc.theta_points;
  spec.phi_points = rc.phi_points;
  spec.time_points = rc.time_points;
  spec.initial_steps = rc.steps;
  spec.refine = rc.refine;
  spec.threads = rc.threads;
  spec.gap = rc.gap;
  spec.echo = rc.echo;
  return spec;
}

std::string fmt(double v) { return format_number(v); }

ScanResult spectrum_table(const RunConfig& rc) {
  ScanResult out;
  out.add_meta("command", "spectrum");
  out.add_meta("version", MOUSETRAP_VERSION);
  std::vector<SensorKind> kinds{rc.model};
  if (rc.all_sensors) {
    kinds = {SensorKind::Standard, SensorKind::LandauZener, SensorKind::Dimer,
             SensorKind::KitaevTrimer};
  }
  out.columns = {"b"};
  for (SensorKind k : kinds) {
    const std::size_t n = branch_eigenvalues(k, 0.0).size();
    for (std::size_t j = 1; j <= n; ++j) {
      const std::string prefix = rc.all_sensors ? std::string(sensor_kind_name(k)) + "_" : "";
      out.columns.push_back(prefix + "lambda_" + std::to_string(j));
    }
  }
  for (double b : rc.b_values) {
    std::vector<double> row{b};
    for (SensorKind k : kinds) {
      const auto l = branch_eigenvalues(k, b);
      row.insert(row.end(), l.begin(), l.end());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

ScanResult evolve_table(const RunConfig& rc) {
  const SensorModel model(rc.model);
  ScanResult out;
  out.add_meta("command", "evolve");
  out.add_meta("version", MOUSETRAP_VERSION);
  for (const auto& kv : rc.echo) out.metadata.push_back(kv);
  TimeGrid grid = make_grid(rc.waveform.window(), rc.steps);
  if (rc.refine) {
    const Refinement r = refine_until_converged(model, rc.waveform, rc.steps,
                                                ramsey_input_state(rc.model, rc.pair), 1e-6);
    grid = r.grid;
    out.add_meta("refinement", "converged");
    out.add_meta("refinement_last_change", fmt(r.last_change));
  } else {
    out.add_meta("refinement", "off");
  }
  out.add_meta("steps", std::to_string(grid.steps));
  const EvolutionResult r = evolve(model, rc.waveform, grid, rc.pair, rc.checkpoint);
  out.add_meta("adiabatic", r.adiabatic_available ? "available" : "unavailable (field off the reference axis)");
  out.columns = {"t", "survival_numeric", "survival_adiabatic", "delta", "phase"};
  for (std::size_t i = 0; i < r.times.size(); ++i)
    out.rows.push_back({r.times[i], r.survival_numeric[i], r.survival_adiabatic[i], r.delta[i],
                        r.accumulated_phase[i]});
  std::ostringstream os;
  os << "evolve: steps=" << grid.steps << " final P_numeric=" << fmt(r.survival_numeric.back())
     << " P_adiabatic=" << fmt(r.survival_adiabatic.back()) << " delta=" << fmt(r.delta.back())
     << " phase=" << fmt(r.accumulated_phase.back());
  out.summary = os.str();
  return out;
}

std::string sweep_summary(const ScanResult& t) {
  const auto eps = t.column("epsilon");
  double plateau = 0.0, departure = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (const char* c : {"p_n1", "p_n3_ps", "p_n3_es"}) {
      const double dev = std::abs(1.0 - t.rows[i][t.column_index(c)]);
      if (std::abs(eps[i]) <= 0.25) plateau = std::max(plateau, dev);
      if (std::abs(eps[i]) >= 0.35) departure = std::max(departure, dev);
    }
  }
  std::ostringstream os;
  os << "sweep: max |1-P| for |eps|<=0.25 = " << fmt(plateau)
     << "; max |1-P| for |eps|>=0.35 = " << fmt(departure);
  return os.str();
}

std::string error_summary(const ScanResult& t) {
  const auto eps = t.column("epsilon");
  const auto delta = t.column("delta");
  double low = 0.0, worst = 0.0, at = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (std::abs(eps[i]) <= 0.5) low = std::max(low, delta[i]);
    if (delta[i] >= worst) worst = delta[i], at = eps[i];
  }
  std::ostringstream os;
  os << "error: max delta for |eps|<=0.5 = " << fmt(low) << "; max delta = " << fmt(worst)
     << " at eps = " << fmt(at);
  return os.str();
}

std::string direction_summary(const ScanResult& t) {
  std::ostringstream os;
  os << "direction: min P_numeric per eps:";
  std::vector<std::pair<double, double>> mins;
  for (const auto& row : t.rows) {
    auto it = std::find_if(mins.begin(), mins.end(), [&](auto& m) { return m.first == row[0]; });
    if (it == mins.end())
      mins.emplace_back(row[0], row[3]);
    else
      it->second = std::min(it->second, row[3]);
  }
  for (const auto& [e, p] : mins) os << " eps=" << fmt(e) << ":" << fmt(p);
  return os.str();
}

std::string timeline_summary(const ScanResult& t) {
  const auto eps = t.column("epsilon");
  const auto chi = t.column("chi");
  double top = eps.empty() ? 0.0 : *std::max_element(eps.begin(), eps.end());
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (eps[i] == top) lo = std::min(lo, chi[i]), hi = std::max(hi, chi[i]);
  std::ostringstream os;
  os << "timeline: chi range at eps = " << fmt(top) << " is [" << fmt(lo) << ", " << fmt(hi) << "]";
  return os.str();
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"spectrum", "evolve", "sweep", "timeline",
                                              "direction", "error"};
  return names;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5"};
  return names;
}

ScanResult run_command(const std::string& command, const RunConfig& rc) {
  if (command == "spectrum") return spectrum_table(rc);
  if (command == "evolve") return evolve_table(rc);
  const ScanSpec spec = scan_spec(rc);
  ScanResult out;
  if (command == "sweep") {
    out = amplitude_sweep(spec);
    out.summary = sweep_summary(out);
  } else if (command == "timeline") {
    out = time_resolved(spec);
    out.summary = timeline_summary(out);
  } else if (command == "direction") {
    out = directional_octant(spec);
    out.summary = direction_summary(out);
  } else if (command == "error") {
    out = adiabatic_error_sweep(spec);
    out.summary = error_summary(out);
  } else {
    fail_validation("unknown command '" + command + "'");
  }
  const auto steps = std::find_if(out.metadata.begin(), out.metadata.end(),
                                  [](const auto& kv) { return kv.first == "steps"; });
  if (steps != out.metadata.end()) out.summary += "; steps = " + steps->second;
  return out;
}

ScanResult run_command(const std::string& command, const Config& config) {
  return run_command(command, resolve(config));
}

ScanResult reproduce(const std::string& figure, Config config) {
  std::string command;
  if (!config.is_set("model")) {
    config.set_default("model", "trimer");
    config.set_default("pair", "4,6");
  }
  if (!config.is_set("shape")) config.set_default("preset", "fig2");
  if (figure == "fig2") {
    command = "sweep";
    config.set_default("eps-min", "0");
    config.set_default("eps-max", "1.5");
    config.set_default("eps-points", "150");
  } else if (figure == "fig3") {
    command = "timeline";
    config.set_default("eps-min", "0.01");
    config.set_default("eps-max", "1.49");
    config.set_default("eps-points", "149");
    config.set_default("time-points", "301");
  } else if (figure == "fig4") {
    command = "direction";
    config.set_default("eps-list", "0.2,0.7,1.0,1.5");
    config.set_default("theta-points", "31");
    config.set_default("phi-points", "31");
  } else if (figure == "fig5") {
    command = "error";
    config.set_default("eps-min", "0");
    config.set_default("eps-max", "1.5");
    config.set_default("eps-points", "150");
  } else {
    fail_validation("unknown figure '" + figure + "' (expected fig2, fig3, fig4 or fig5)");
  }
  ScanResult out = run_command(command, resolve(config));
  out.metadata.insert(out.metadata.begin(), {"figure", figure});
  out.summary = figure + " " + out.summary;
  return out;
}

std::string coefficients_json() { return series_tables_json().dump(2) + "\n"; }

std::vector<std::string> write_outputs(const ScanResult& table, const std::string& directory,
                                       const std::string& stem, const std::string& format) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail_io("cannot create output directory '" + directory + "': " + ec.message());
  std::vector<std::string> written;
  const std::filesystem::path base = std::filesystem::path(directory) / stem;
  if (format == "csv" || format == "both") {
    write_csv_file(table, base.string() + ".csv");
    written.push_back(base.string() + ".csv");
  }
  if (format == "json" || format == "both") {
    write_json_file(table, base.string() + ".json");
    written.push_back(base.string() + ".json");
  }
  return written;
}

}  // namespace mousetrap
