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
#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "scan.hpp"
#include "table.hpp"

namespace mousetrap {

namespace {

const ConfigKey* find_key(const std::string& name) {
  for (const auto& k : config_keys())
    if (name == k.name) return &k;
  return nullptr;
}

std::string path_of(const std::string& name) {
  const ConfigKey* k = find_key(name);
  return k ? std::string(k->section) + "." + name : name;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  fail_validation(path_of(key) + ": " + why);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Canonical key name from "key" or "section.key".
std::string canonical(const std::string& key) {
  const auto dot = key.find('.');
  const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
  const ConfigKey* k = find_key(name);
  if (!k) fail_validation("unknown configuration key '" + key + "'");
  if (dot != std::string::npos && key.substr(0, dot) != k->section)
    fail_validation("unknown configuration key '" + key + "' (did you mean '" + path_of(name) + "'?)");
  return name;
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    if (!std::isfinite(v)) bad(key, "must be finite, got '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    bad(key, "expected a number, got '" + text + "'");
  }
}

long to_long(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    bad(key, "expected an integer, got '" + text + "'");
  }
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad(key, "expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) bad(key, "empty entry in list '" + text + "'");
    out.push_back(to_double(key, item));
  }
  if (out.empty()) bad(key, "list is empty");
  return out;
}

std::array<double, 3> to_direction(const std::string& key, const std::string& text) {
  static const std::map<std::string, std::array<double, 3>> named{
      {"x", {1, 0, 0}}, {"y", {0, 1, 0}}, {"z", {0, 0, 1}},
      {"-x", {-1, 0, 0}}, {"-y", {0, -1, 0}}, {"-z", {0, 0, -1}},
      {"+x", {1, 0, 0}}, {"+y", {0, 1, 0}}, {"+z", {0, 0, 1}}};
  if (auto it = named.find(text); it != named.end()) return it->second;
  const auto v = to_list(key, text);
  if (v.size() != 3) bad(key, "expected x, y, z, -x, -y, -z or three comma-separated components");
  const double len = std::hypot(v[0], v[1], v[2]);
  if (!(len > 0.0)) bad(key, "direction must be non-zero");
  return {v[0] / len, v[1] / len, v[2] / len};
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      {"model", "model", "trimer", "sensor model: standard, landau-zener, dimer or trimer"},
      {"model", "pair", "", "eigen pair p,q (1-based labels); default 4,6 for the trimer, 2,1 for standard and landau-zener, 4,2 for dimer"},
      {"waveform", "preset", "fig2", "named signal preset (fig2: epsilon exp(-t^2/20) sin(0.1 pi t) on [-15,15])"},
      {"waveform", "shape", "", "custom signal instead of a preset: gaussian-sine, constant or samples"},
      {"waveform", "epsilon", "1", "amplitude of a gaussian-sine signal (single evolutions)"},
      {"waveform", "s", "", "gaussian-sine envelope width (time^2)"},
      {"waveform", "k", "", "gaussian-sine frequency"},
      {"waveform", "t0", "", "window start"},
      {"waveform", "t1", "", "window end"},
      {"waveform", "value", "", "constant signal value"},
      {"waveform", "samples", "", "two-column CSV (time, value) for a sampled signal"},
      {"waveform", "direction", "", "field direction: x, y, z, -x, -y, -z or 'dx,dy,dz'; default the model's coupling axis"},
      {"grid", "steps", "512", "time steps (initial count when refining)"},
      {"grid", "refine", "true", "double the steps until the final survival changes by < 1e-6", true},
      {"grid", "checkpoint", "16", "evolve output cadence in steps"},
      {"scan", "eps-min", "0", "first amplitude of the sweep grid"},
      {"scan", "eps-max", "1.5", "last amplitude of the sweep grid"},
      {"scan", "eps-points", "150", "number of sweep amplitudes"},
      {"scan", "eps-list", "", "explicit comma-separated amplitudes (overrides eps-min/max/points)"},
      {"scan", "theta-points", "31", "polar angles over [0, pi/2] for directional scans"},
      {"scan", "phi-points", "31", "azimuths over [0, pi/2] for directional scans"},
      {"scan", "time-points", "301", "time samples per amplitude for the time-resolved scan"},
      {"scan", "threads", "0", "worker threads; 0 uses the available parallelism"},
      {"bound", "gap-floor", "1e-9", "smallest admissible spectral gap in the adiabatic bound"},
      {"bound", "gap-policy", "global", "gap aggregation: global (minimum over the run) or pointwise"},
      {"bound", "gap-threshold", "0.05", "only times with |b| above this enter the bound"},
      {"bound", "gap-levels", "all", "gap to all other levels or only to levels coupled by H1"},
      {"spectrum", "b", "0", "comma-separated field amplitudes for the spectrum command"},
      {"spectrum", "all-sensors", "false", "also list the standard, landau-zener and dimer spectra", true},
      {"spectrum", "coefficients", "false", "print the phase series coefficient tables as JSON", true},
      {"output", "out", "", "output directory; without it tables go to standard output"},
      {"output", "format", "csv", "csv, json or both"},
  };
  return keys;
}

std::string Config::canonical_name(const std::string& key) { return canonical(trim(key)); }

void Config::set(const std::string& key, const std::string& value) {
  values_[canonical(trim(key))] = trim(value);
}

void Config::set_default(const std::string& key, const std::string& value) {
  const std::string name = canonical(key);
  if (!values_.contains(name)) values_[name] = value;
}

bool Config::is_set(const std::string& key) const { return values_.contains(canonical(key)); }

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(canonical(key));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void Config::load_text(const std::string& text, const std::string& origin) {
  std::stringstream ss(text);
  std::string line, section;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(number) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') fail_validation(where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_validation(where + "expected 'key = value'");
    if (section.empty()) fail_validation(where + "key outside of a [section]");
    const std::string key = section + "." + trim(line.substr(0, eq));
    try {
      set(key, line.substr(eq + 1));
    } catch (const Error& e) {
      fail_validation(where + e.what());
    }
  }
}

void Config::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail_io("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path.string());
}

EigenPair default_pair(SensorKind kind) {
  switch (kind) {
    case SensorKind::KitaevTrimer: return kMousetrapPair;
    case SensorKind::Dimer: return {4, 2};
    default: return {2, 1};
  }
}

RunConfig resolve(const Config& config) {
  auto text = [&](const char* key) -> std::string {
    if (auto v = config.get(key)) return *v;
    return find_key(key)->default_text;
  };
  auto given = [&](const char* key) { return config.is_set(key); };
  RunConfig rc;

  try {
    rc.model = parse_sensor_kind(text("model"));
  } catch (const Error& e) {
    bad("model", e.what());
  }
  rc.pair = default_pair(rc.model);
  if (given("pair")) {
    try {
      rc.pair = parse_eigen_pair(text("pair"));
      validate_pair(rc.model, rc.pair);
    } catch (const Error& e) {
      bad("pair", e.what());
    }
  }

  // Waveform: a preset, optionally with field overrides, or a fully specified custom shape.
  const SensorModel model(rc.model);
  std::array<double, 3> direction{};
  direction[static_cast<int>(model.reference_axis())] = 1.0;
  if (given("direction")) direction = to_direction("direction", text("direction"));
  for (Axis a : {Axis::X, Axis::Y, Axis::Z})
    if (direction[static_cast<int>(a)] != 0.0 && !model.supports(a))
      bad("direction", "model '" + std::string(sensor_kind_name(rc.model)) +
                           "' has no coupling along this direction");

  const double epsilon = to_double("epsilon", text("epsilon"));
  WaveformShape unit_shape;
  Window window;
  if (given("shape")) {
    if (given("preset")) bad("shape", "conflicts with waveform.preset; give one or the other");
    const std::string shape = text("shape");
    auto require = [&](const char* key) {
      if (!given(key)) bad(key, "required when waveform.shape = " + shape);
      return to_double(key, text(key));
    };
    if (shape == "gaussian-sine") {
      const double s = require("s"), k = require("k");
      window = {require("t0"), require("t1")};
      if (!(s > 0.0)) bad("s", "must be positive");
      unit_shape = GaussianSine{1.0, s, k};
    } else if (shape == "constant") {
      const double v = require("value");
      window = {require("t0"), require("t1")};
      unit_shape = Constant{v};
    } else if (shape == "samples") {
      if (!given("samples")) bad("samples", "required when waveform.shape = samples");
      Samples samples = read_samples_csv(text("samples"));
      if (samples.times.size() < 2) bad("samples", "need at least two samples");
      window = {given("t0") ? to_double("t0", text("t0")) : samples.times.front(),
                given("t1") ? to_double("t1", text("t1")) : samples.times.back()};
      unit_shape = std::move(samples);
    } else {
      bad("shape", "expected gaussian-sine, constant or samples, got '" + shape + "'");
    }
    rc.waveform_label = shape;
  } else {
    const std::string preset = text("preset");
    if (!is_preset(preset)) bad("preset", "unknown preset '" + preset + "' (available: fig2)");
    const Waveform base = preset_waveform(preset, 1.0);
    GaussianSine g = std::get<GaussianSine>(base.shape());
    if (given("s")) g.s = to_double("s", text("s"));
    if (given("k")) g.k = to_double("k", text("k"));
    if (!(g.s > 0.0)) bad("s", "must be positive");
    window = base.window();
    if (given("t0")) window.t0 = to_double("t0", text("t0"));
    if (given("t1")) window.t1 = to_double("t1", text("t1"));
    for (const char* key : {"value", "samples"})
      if (given(key)) bad(key, "only used with waveform.shape");
    unit_shape = g;
    rc.waveform_label = preset;
  }
  if (!(window.t0 < window.t1)) bad("t1", "window must satisfy t0 < t1");
  try {
    rc.unit_waveform = Waveform(unit_shape, direction, window);
  } catch (const Error& e) {
    bad(given("samples") ? "samples" : "t0", e.what());
  }
  // Single runs: a gaussian-sine takes epsilon as its amplitude; other shapes keep their
  // own amplitude unless epsilon is given explicitly.
  const bool gaussian = std::holds_alternative<GaussianSine>(unit_shape);
  rc.waveform = rc.unit_waveform.scaled(gaussian || given("epsilon") ? epsilon : 1.0);

  rc.steps = to_long("steps", text("steps"));
  if (rc.steps < 1) bad("steps", "must be at least 1");
  rc.refine = to_bool("refine", text("refine"));
  if (rc.refine && rc.steps < 16) bad("steps", "must be at least 16 when grid.refine = true");
  rc.checkpoint = to_long("checkpoint", text("checkpoint"));
  if (rc.checkpoint < 1) bad("checkpoint", "must be at least 1");

  if (given("eps-list")) {
    rc.epsilons = to_list("eps-list", text("eps-list"));
  } else {
    const long points = to_long("eps-points", text("eps-points"));
    if (points < 1 || points > 1000000) bad("eps-points", "must be between 1 and 1000000");
    rc.epsilons = linspace(to_double("eps-min", text("eps-min")),
                           to_double("eps-max", text("eps-max")), static_cast<int>(points));
  }
  auto count = [&](const char* key, long lo) {
    const long v = to_long(key, text(key));
    if (v < lo || v > 100000) bad(key, "must be between " + std::to_string(lo) + " and 100000");
    return static_cast<int>(v);
  };
  rc.theta_points = count("theta-points", 1);
  rc.phi_points = count("phi-points", 1);
  rc.time_points = count("time-points", 2);
  rc.threads = count("threads", 0);
  if (rc.threads == 0) rc.threads = std::max(1u, std::thread::hardware_concurrency());

  rc.gap.floor = to_double("gap-floor", text("gap-floor"));
  if (!(rc.gap.floor > 0.0)) bad("gap-floor", "must be positive");
  rc.gap.threshold = to_double("gap-threshold", text("gap-threshold"));
  if (rc.gap.threshold < 0.0) bad("gap-threshold", "must be non-negative");
  try {
    rc.gap.aggregation = parse_gap_aggregation(text("gap-policy"));
    rc.gap.levels = parse_gap_levels(text("gap-levels"));
  } catch (const Error& e) {
    fail_validation(e.what());
  }

  rc.b_values = to_list("b", text("b"));
  rc.all_sensors = to_bool("all-sensors", text("all-sensors"));
  rc.coefficients = to_bool("coefficients", text("coefficients"));
  rc.out = text("out");
  rc.format = text("format");
  if (rc.format != "csv" && rc.format != "json" && rc.format != "both")
    bad("format", "expected csv, json or both, got '" + rc.format + "'");

  for (const auto& k : config_keys()) {
    const std::string name = k.name;
    if (name == "threads" || name == "out" || name == "format") continue;
    if (auto v = config.get(name)) rc.echo.emplace_back(name, *v);
  }
  rc.echo.emplace_back("resolved_pair", std::to_string(rc.pair.p) + "," + std::to_string(rc.pair.q));
  rc.echo.emplace_back("resolved_waveform", rc.waveform_label);
  return rc;
}

}  // namespace mousetrap
